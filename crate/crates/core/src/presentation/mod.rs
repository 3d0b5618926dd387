//! Group presentations: the presentation with generators `f_{P,A}`, the
//! Coxeter presentation of `S_r`, and Tietze moves.

mod tietze;
pub mod word;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_partitions, require_transversal, Partition, Subset};
use crate::error::{invalid, Error, Result};
use crate::label::label_unchecked;
use crate::permutation::Permutation;
use crate::schreier::{build_schreier, eval_word, schreier_step, IdempotentLetter, SchreierSystem};
use crate::square::{Square, SquareIndex};

pub use tietze::{generic_tietze_simplify, TietzeLimits};
pub use word::{canonical_relator, cyclic_reduce, free_reduce, inverse, solve_for, substitute, Word};

/// The generator `f_{P,A}` with its label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGenerator")]
pub struct GeneratorId {
    #[serde(rename = "P")]
    pub p: Partition,
    #[serde(rename = "A")]
    pub a: Subset,
    pub label: Permutation,
}

#[derive(Deserialize)]
struct RawGenerator {
    #[serde(rename = "P")]
    p: Partition,
    #[serde(rename = "A")]
    a: Vec<u8>,
    label: Option<Permutation>,
}

impl TryFrom<RawGenerator> for GeneratorId {
    type Error = Error;

    fn try_from(raw: RawGenerator) -> Result<Self> {
        let g = GeneratorId::new(raw.p, Subset::new(raw.p.n(), &raw.a)?)?;
        match raw.label {
            Some(l) if l != g.label => Err(invalid(format!(
                "stated label {l} of {g} differs from {}",
                g.label
            ))),
            _ => Ok(g),
        }
    }
}

impl GeneratorId {
    pub fn new(p: Partition, a: Subset) -> Result<Self> {
        require_transversal(&a, &p)?;
        Ok(GeneratorId {
            p,
            a,
            label: label_unchecked(&p, &a),
        })
    }

    pub(crate) fn new_unchecked(p: Partition, a: Subset) -> Self {
        GeneratorId {
            p,
            a,
            label: label_unchecked(&p, &a),
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[{}|{}]", self.p, self.a)
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A generator: a transversal pair, or an abstract Coxeter generator `g_k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    F(GeneratorId),
    G { g: u8 },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::F(id) => write!(f, "{id}"),
            Symbol::G { g } => write!(f, "g{g}"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Where a relation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Schreier relations `f_{P,A} = f_{P,B}`.
    Top,
    /// `f_{P,A(P)} = 1`.
    Middle,
    /// One relation per proper singular square.
    Bottom,
    Derived,
    Coxeter,
}

impl Provenance {
    pub fn merge(self, other: Provenance) -> Provenance {
        if self == other {
            self
        } else {
            Provenance::Derived
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub tag: Provenance,
}

impl Relation {
    pub fn relator(&self) -> Word {
        word::concat(&[&self.lhs, &inverse(&self.rhs)])
    }
}

/// Generators and relations; words index into `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<Symbol>,
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<Symbol>) -> Self {
        GroupPresentation {
            generators,
            relations: Vec::new(),
        }
    }

    pub fn add_relation(&mut self, lhs: Word, rhs: Word, tag: Provenance) -> Result<()> {
        let ngen = self.generators.len();
        if lhs.iter().chain(&rhs).any(|&l| l == 0 || word::generator_of(l) >= ngen) {
            return Err(invalid("relation mentions an undeclared generator"));
        }
        self.relations.push(Relation { lhs, rhs, tag });
        Ok(())
    }

    pub fn relators(&self) -> Vec<Word> {
        self.relations.iter().map(Relation::relator).collect()
    }

    pub fn count_tag(&self, tag: Provenance) -> usize {
        self.relations.iter().filter(|r| r.tag == tag).count()
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.generators.iter().position(|x| x == s)
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&l| {
                let s = self.generators[word::generator_of(l)].to_string();
                if l < 0 {
                    format!("{s}^-1")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// One relation per line, `lhs = rhs`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&format!("{} = {}\n", self.format_word(&r.lhs), self.format_word(&r.rhs)));
        }
        out
    }

    /// Only the relations carrying one of the given tags.
    pub fn filtered(&self, tags: &[Provenance]) -> GroupPresentation {
        GroupPresentation {
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .filter(|r| tags.contains(&r.tag))
                .cloned()
                .collect(),
        }
    }
}

/// Counts reported alongside the presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PresentationCounts {
    pub generators: usize,
    /// Schreier relations whose word condition holds letter for letter.
    pub top_literal: usize,
    /// Ordered triples `(P, A, B)`, `A ≠ B`, whose word condition holds as
    /// maps in `T_n`.
    pub top_map_ordered: usize,
    /// The same, counting `{A, B}` once.
    pub top_map_unordered: usize,
    pub middle: usize,
    /// Ordered proper singular squares.
    pub bottom: usize,
    /// Ordered singular squares including degenerate ones.
    pub singular_all: u64,
}

/// Is `f_{P,A} = f_{P,B}` a Schreier relation, i.e. is `ρ_A e_{P,B}` letter
/// for letter the representative of `A e_{P,B}`?
pub fn is_top_instance(sys: &SchreierSystem, p: &Partition, a: &Subset, b: &Subset) -> bool {
    if !crate::combinatorics::transversal_unchecked(a, p) || !crate::combinatorics::transversal_unchecked(b, p) {
        return false;
    }
    let Some(rho_a) = sys.rho.get(a) else {
        return false;
    };
    // A ⊥ P, so A e_{P,B} = B
    let Some(rho_b) = sys.rho.get(b) else {
        return false;
    };
    rho_b.len() == rho_a.len() + 1
        && rho_b[..rho_a.len()] == rho_a[..]
        && rho_b.last() == Some(&IdempotentLetter { p: *p, a: *b })
}

/// The presentation with generators `f_{P,A}` and the three relation
/// families, plus counts.
pub fn build_presentation(n: usize, r: usize) -> Result<(GroupPresentation, PresentationCounts)> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 ≤ r ≤ n, got n = {n}, r = {r}")));
    }
    let sys = build_schreier(n, r)?;
    let index = SquareIndex::new(n, r)?;
    let mut generators = Vec::new();
    let mut ids: HashMap<(Partition, Subset), usize> = HashMap::new();
    for (p, row) in index.partitions.iter().zip(&index.rows) {
        for (a, l) in row {
            ids.insert((*p, *a), generators.len());
            generators.push(Symbol::F(GeneratorId {
                p: *p,
                a: *a,
                label: *l,
            }));
        }
    }
    let id = |p: &Partition, a: &Subset| ids[&(*p, *a)];
    let mut pres = GroupPresentation::new(generators);
    let mut counts = PresentationCounts {
        generators: pres.generators.len(),
        ..Default::default()
    };

    for a in crate::combinatorics::enumerate_subsets(n, r)? {
        if let Some((b, p)) = schreier_step(&a) {
            debug_assert!(is_top_instance(&sys, &p, &b, &a));
            pres.add_relation(vec![word::letter(id(&p, &b), 1)], vec![word::letter(id(&p, &a), 1)], Provenance::Top)?;
            counts.top_literal += 1;
        }
    }
    let (ordered, unordered) = top_map_counts(&sys, &index)?;
    counts.top_map_ordered = ordered;
    counts.top_map_unordered = unordered;

    for p in enumerate_partitions(n, r)? {
        let ap = crate::combinatorics::min_transversal(&p);
        pres.add_relation(vec![word::letter(id(&p, &ap), 1)], vec![], Provenance::Middle)?;
        counts.middle += 1;
    }

    let singular = index.singular_squares();
    counts.singular_all = singular.len() as u64;
    for sq in singular.iter().filter(|s| s.is_proper()) {
        let (pa, pb, qa, qb) = (id(&sq.p, &sq.a), id(&sq.p, &sq.b), id(&sq.q, &sq.a), id(&sq.q, &sq.b));
        pres.add_relation(
            vec![word::letter(pa, -1), word::letter(pb, 1)],
            vec![word::letter(qa, -1), word::letter(qb, 1)],
            Provenance::Bottom,
        )?;
        counts.bottom += 1;
    }
    Ok((pres, counts))
}

/// The relation of a square in the form `f_{P,A}^{-1} f_{P,B} = f_{Q,A}^{-1} f_{Q,B}`.
pub fn square_relation(sq: &Square) -> [(GeneratorId, i8); 4] {
    let g = |p: &Partition, a: &Subset| GeneratorId::new_unchecked(*p, *a);
    [
        (g(&sq.p, &sq.a), -1),
        (g(&sq.p, &sq.b), 1),
        (g(&sq.q, &sq.a), -1),
        (g(&sq.q, &sq.b), 1),
    ]
}

fn top_map_counts(sys: &SchreierSystem, index: &SquareIndex) -> Result<(usize, usize)> {
    let n = sys.n;
    let per_row: Vec<(usize, usize)> = index
        .partitions
        .par_iter()
        .zip(&index.rows)
        .map(|(p, row)| {
            let holds = |a: &Subset, b: &Subset| -> bool {
                let mut w = sys.rho[a].clone();
                w.push(IdempotentLetter { p: *p, a: *b });
                eval_word(&w, n).ok() == eval_word(&sys.rho[b], n).ok()
            };
            let mut ordered = 0;
            let mut unordered = 0;
            for (i, (a, _)) in row.iter().enumerate() {
                for (b, _) in &row[i + 1..] {
                    let (x, y) = (holds(a, b), holds(b, a));
                    ordered += x as usize + y as usize;
                    unordered += (x || y) as usize;
                }
            }
            (ordered, unordered)
        })
        .collect();
    Ok(per_row.into_iter().fold((0, 0), |(a, b), (x, y)| (a + x, b + y)))
}

/// `⟨g_1, ..., g_{r-1} | g_i² = 1, g_i g_j = g_j g_i (|i-j| > 1),
/// g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}⟩`.
pub fn coxeter_presentation(r: usize) -> GroupPresentation {
    let m = r.saturating_sub(1);
    let mut pres = GroupPresentation::new((1..=m as u8).map(|g| Symbol::G { g }).collect());
    let g = |i: usize| i as i32;
    for i in 1..=m {
        pres.relations.push(Relation {
            lhs: vec![g(i), g(i)],
            rhs: vec![],
            tag: Provenance::Coxeter,
        });
    }
    for i in 1..=m {
        for j in i + 2..=m {
            pres.relations.push(Relation {
                lhs: vec![g(i), g(j)],
                rhs: vec![g(j), g(i)],
                tag: Provenance::Coxeter,
            });
        }
    }
    for i in 1..m {
        pres.relations.push(Relation {
            lhs: vec![g(i), g(i + 1), g(i)],
            rhs: vec![g(i + 1), g(i), g(i + 1)],
            tag: Provenance::Coxeter,
        });
    }
    pres
}

/// Remove generator `g` by substituting `defining_word` for it. Some
/// relation must yield exactly `g = defining_word` when solved for `g`.
pub fn eliminate_generator(pres: &GroupPresentation, g: usize, defining_word: &[i32]) -> Result<GroupPresentation> {
    let target = free_reduce(defining_word);
    if g >= pres.generators.len() || target.iter().any(|&l| word::generator_of(l) == g) {
        return Err(Error::NotEliminable(format!("generator {g}")));
    }
    let defining = pres
        .relations
        .iter()
        .position(|r| solve_for(&r.relator(), g).map(|w| free_reduce(&w)) == Some(target.clone()))
        .ok_or_else(|| Error::NotEliminable(pres.generators[g].to_string()))?;
    let renumber = |l: i32| -> i32 {
        let k = word::generator_of(l);
        let k2 = if k > g { k - 1 } else { k };
        word::letter(k2, l.signum() as i8)
    };
    let mut out = GroupPresentation::new(
        pres.generators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != g)
            .map(|(_, s)| *s)
            .collect(),
    );
    for (i, r) in pres.relations.iter().enumerate() {
        if i == defining {
            continue;
        }
        let lhs: Word = substitute(&r.lhs, g, &target).into_iter().map(renumber).collect();
        let rhs: Word = substitute(&r.rhs, g, &target).into_iter().map(renumber).collect();
        if lhs == rhs {
            continue;
        }
        let tag = if occurs(&r.lhs, g) || occurs(&r.rhs, g) {
            r.tag.merge(pres.relations[defining].tag)
        } else {
            r.tag
        };
        out.relations.push(Relation { lhs, rhs, tag });
    }
    Ok(out)
}

fn occurs(w: &[i32], g: usize) -> bool {
    w.iter().any(|&l| word::generator_of(l) == g)
}
