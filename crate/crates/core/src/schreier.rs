//! Representative words `ρ_A`, `ρ'_A` over the idempotent alphabet.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_subsets, is_transversal, Partition, Subset};
use crate::error::{invalid, Result};
use crate::transformation::{compose, idempotent, Transformation};

/// The letter `e_{P,A}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLetter")]
pub struct IdempotentLetter {
    #[serde(rename = "P")]
    pub p: Partition,
    #[serde(rename = "A")]
    pub a: Subset,
}

#[derive(Deserialize)]
struct RawLetter {
    #[serde(rename = "P")]
    p: Partition,
    #[serde(rename = "A")]
    a: Vec<u8>,
}

impl TryFrom<RawLetter> for IdempotentLetter {
    type Error = crate::error::Error;

    fn try_from(raw: RawLetter) -> Result<Self> {
        let a = Subset::new(raw.p.n(), &raw.a)?;
        IdempotentLetter::new(raw.p, a)
    }
}

impl IdempotentLetter {
    pub fn new(p: Partition, a: Subset) -> Result<Self> {
        crate::combinatorics::require_transversal(&a, &p)?;
        Ok(IdempotentLetter { p, a })
    }

    pub fn transformation(&self) -> Transformation {
        idempotent(&self.p, &self.a).expect("letters are transversal pairs")
    }
}

/// A word in the idempotent letters.
pub type EWord = Vec<IdempotentLetter>;

/// Left-to-right product of the letters; the empty word is the identity.
pub fn eval_word(w: &[IdempotentLetter], n: usize) -> Result<Transformation> {
    let mut acc = Transformation::identity(n)?;
    for letter in w {
        if letter.p.n() != n {
            return Err(invalid(format!(
                "letter over [1, {}] in a word over [1, {n}]",
                letter.p.n()
            )));
        }
        acc = compose(&acc, &letter.transformation())?;
    }
    Ok(acc)
}

/// The convex partition `{[1,a_1], [a_1+1,a_2], ..., [a_{r-1}+1, n]}`.
pub fn schreier_partition(a: &Subset) -> Partition {
    let elems = a.elements();
    let mut minima = vec![1u8];
    minima.extend(elems[..elems.len() - 1].iter().map(|&x| x + 1));
    Partition::convex_from_minima(a.n(), &minima).expect("increasing interval starts")
}

/// For `A ≠ [1,r]`: the predecessor `B` (first `a_m ≠ m` lowered by one) and
/// the partition of the induction step.
pub fn schreier_step(a: &Subset) -> Option<(Subset, Partition)> {
    let elems = a.elements();
    let m = elems.iter().enumerate().position(|(i, &x)| x as usize != i + 1)?;
    let b = a.replace(elems[m], elems[m] - 1).expect("a_m - 1 lies outside A");
    Some((b, schreier_partition(a)))
}

#[derive(Clone, Debug)]
pub struct SchreierSystem {
    pub n: usize,
    pub r: usize,
    pub rho: BTreeMap<Subset, EWord>,
    pub rho_prime: BTreeMap<Subset, EWord>,
}

/// Build `ρ_A` and `ρ'_A` for every r-subset by induction along `<_lex`.
pub fn build_schreier(n: usize, r: usize) -> Result<SchreierSystem> {
    let mut rho = BTreeMap::new();
    let mut rho_prime = BTreeMap::new();
    for a in enumerate_subsets(n, r)? {
        match schreier_step(&a) {
            None => {
                rho.insert(a, Vec::new());
                rho_prime.insert(a, Vec::new());
            }
            Some((b, p)) => {
                debug_assert!(is_transversal(&a, &p)? && is_transversal(&b, &p)?);
                let mut w: EWord = rho[&b].clone();
                w.push(IdempotentLetter { p, a });
                let mut w_prime = vec![IdempotentLetter { p, a: b }];
                w_prime.extend_from_slice(&rho_prime[&b]);
                rho.insert(a, w);
                rho_prime.insert(a, w_prime);
            }
        }
    }
    Ok(SchreierSystem {
        n,
        r,
        rho,
        rho_prime,
    })
}

impl SchreierSystem {
    pub fn rho(&self, a: &Subset) -> &EWord {
        &self.rho[a]
    }

    pub fn rho_prime(&self, a: &Subset) -> &EWord {
        &self.rho_prime[a]
    }

    /// The subset whose representative is the given prefix, if any.
    pub fn subset_with_word(&self, w: &[IdempotentLetter]) -> Option<Subset> {
        match w.last() {
            None => Subset::initial(self.n, self.r).ok(),
            Some(last) => (self.rho.get(&last.a)? == w).then_some(last.a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example_bijection() {
        let sys = build_schreier(7, 4).unwrap();
        let a = Subset::new(7, &[1, 2, 4, 6]).unwrap();
        let t = eval_word(sys.rho(&a), 7).unwrap();
        assert_eq!(&t.images()[..4], &[1, 2, 4, 6]);
        let first = Subset::initial(7, 4).unwrap();
        assert!(sys.rho(&first).is_empty());
    }

    #[test]
    fn predecessor_and_partition() {
        let a = Subset::new(7, &[1, 2, 4, 6]).unwrap();
        let (b, p) = schreier_step(&a).unwrap();
        assert_eq!(b.to_string(), "{1,2,3,6}");
        assert_eq!(p.to_string(), "{{1},{2},{3,4},{5,6,7}}");
        assert!(schreier_step(&Subset::initial(7, 4).unwrap()).is_none());
    }

    #[test]
    fn letters_round_trip() {
        let sys = build_schreier(5, 2).unwrap();
        let a = Subset::new(5, &[3, 5]).unwrap();
        let json = serde_json::to_string(sys.rho(&a)).unwrap();
        let back: EWord = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, sys.rho(&a));
        assert!(serde_json::from_str::<IdempotentLetter>(r#"{"P":[[1,2],[3]],"A":[1,2]}"#).is_err());
    }
}
