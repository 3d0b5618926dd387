//! The derivation reducing the presentation to the Coxeter presentation of
//! `S_r`.
//!
//! Every step assigns a word over the Coxeter generators `g_k` to one
//! generator `f_{P,A}`, or derives a relator over the `g_k`. Words use the
//! signed letters of [`crate::presentation::word`], letter `k` standing for
//! `g_k`.

mod construct;
mod derive;
mod links;
mod replay;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, Subset};
use crate::error::{invalid, Error, Result};
use crate::permutation::Permutation;
use crate::presentation::{GeneratorId, GroupPresentation, Word};
use crate::square::{Square, SquareLabels};

pub use construct::{
    canonical_cycle_pair, coxeter_square_braid, coxeter_square_braid_partner, coxeter_square_commute,
    coxeter_square_involution, cycle_split, descent_reduction, DescentReduction,
};
pub use derive::{derive_identity_convex, derive_identity_general, derive_identity_one, Deriver};
pub use links::{cycle_equal_branch, cycle_equal_links, same_column_links, same_row_links, Link};
pub use replay::{replay, replay_steps, ReplayFailure, ReplayReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// Three corners are trivial.
    #[serde(rename = "corner")]
    Corner,
    /// The column without the target has equal corners.
    #[serde(rename = "flush-left")]
    FlushLeft,
    /// The row without the target has equal corners.
    #[serde(rename = "flush-top")]
    FlushTop,
    /// The corner opposite the target is trivial.
    #[serde(rename = "three-quarter")]
    ThreeQuarter,
    #[serde(rename = "schreier")]
    Schreier,
    #[serde(rename = "base")]
    Base,
    /// All four corners known; the square yields a relator.
    #[serde(rename = "square")]
    SquareRelator,
    /// Two squares sharing one unknown corner yield a relator.
    #[serde(rename = "braid-combination")]
    BraidCombination,
    /// Introduce `g_k` as a generator labelled `(k k+1)`.
    #[serde(rename = "define")]
    Define,
}

/// A cited relation of the presentation, or an earlier step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawPremise")]
pub enum Premise {
    /// The Schreier relation `f_{P,from} = f_{P,to}`.
    Top {
        #[serde(rename = "P")]
        p: Partition,
        from: Subset,
        to: Subset,
    },
    /// `f_{P,A(P)} = 1`.
    Middle {
        #[serde(rename = "P")]
        p: Partition,
    },
    /// The relation of a proper singular square.
    Bottom { square: Square },
    Step { index: usize },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawPremise {
    Top {
        #[serde(rename = "P")]
        p: Partition,
        from: Vec<u8>,
        to: Vec<u8>,
    },
    Middle {
        #[serde(rename = "P")]
        p: Partition,
    },
    Bottom {
        square: Square,
    },
    Step {
        index: usize,
    },
}

impl TryFrom<RawPremise> for Premise {
    type Error = Error;

    fn try_from(raw: RawPremise) -> Result<Self> {
        Ok(match raw {
            RawPremise::Top { p, from, to } => Premise::Top {
                p,
                from: Subset::new(p.n(), &from)?,
                to: Subset::new(p.n(), &to)?,
            },
            RawPremise::Middle { p } => Premise::Middle { p },
            RawPremise::Bottom { square } => Premise::Bottom { square },
            RawPremise::Step { index } => Premise::Step { index },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Conclusion {
    /// `f_{P,A}` equals a word in the `g_k`.
    Value { generator: GeneratorId, value: Word },
    /// A relator in the `g_k`.
    Relation { relator: Word },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub square: Square,
    pub labels: SquareLabels,
}

impl Witness {
    pub fn of(square: Square) -> Self {
        Witness {
            square,
            labels: square.labels(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub premises: Vec<Premise>,
    pub conclusion: Conclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationLog {
    pub n: usize,
    pub r: usize,
    pub steps: Vec<DerivationStep>,
    pub snapshot: GroupPresentation,
}

/// The Coxeter word of a permutation: empty for the identity,
/// `g_v g_{v+1} ... g_{v+w-1}` for `ξ_{v,w}`, and otherwise the word of the
/// rightmost descent cycle followed by the word of the remainder.
pub fn coxeter_word(pi: &Permutation) -> Word {
    let mut out = Word::new();
    let mut cur = *pi;
    while let Some((loc, _, rest)) = cur.split_rightmost_descent() {
        out.extend((loc.v..loc.v + loc.w).map(|k| k as i32));
        cur = rest;
    }
    out
}

/// Evaluate a word in the `g_k` as a product of adjacent transpositions.
pub fn evaluate_word(w: &[i32], r: usize) -> Result<Permutation> {
    let mut acc = Permutation::identity(r);
    for &l in w {
        let k = l.unsigned_abs() as u8;
        acc = acc * Permutation::transposition(k, k + 1, r)?;
    }
    Ok(acc)
}

/// Run all phases and return the final presentation and the log.
pub fn run_pipeline(n: usize, r: usize) -> Result<(GroupPresentation, DerivationLog)> {
    if r == 0 || r + 2 > n || n > crate::combinatorics::MAX_N {
        return Err(invalid(format!("the derivation needs 1 ≤ r ≤ n-2, got n = {n}, r = {r}")));
    }
    let mut d = Deriver::new(n, r)?;
    d.run()?;
    let log = d.into_log();
    Ok((log.snapshot.clone(), log))
}

