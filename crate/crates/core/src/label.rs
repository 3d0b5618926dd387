//! Labels `λ(P,A) ∈ S_r` of transversal pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{enumerate_partitions, require_transversal, transversals, Partition, Subset};
use crate::error::Result;
use crate::permutation::Permutation;

/// The three bijections whose composite is the label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelContext {
    /// `[1,r] -> A(P)`, order preserving.
    pub rho_ap: Vec<(u8, u8)>,
    /// `A(P) -> A`, block minimum to the block's element of `A`.
    pub gamma: Vec<(u8, u8)>,
    /// `A -> [1,r]`, order preserving.
    pub rho_a_inv: Vec<(u8, u8)>,
}

fn lookup(map: &[(u8, u8)], x: u8) -> u8 {
    map.iter().find(|&&(k, _)| k == x).map(|&(_, v)| v).expect("point in domain")
}

impl LabelContext {
    pub fn new(p: &Partition, a: &Subset) -> Result<Self> {
        require_transversal(a, p)?;
        let minima = p.minima();
        let rho_ap = minima.iter().enumerate().map(|(i, &m)| (i as u8 + 1, m)).collect();
        let gamma = p
            .block_masks()
            .iter()
            .zip(&minima)
            .map(|(&blk, &m)| (m, (blk & a.mask()).trailing_zeros() as u8 + 1))
            .collect();
        let rho_a_inv = a.iter().enumerate().map(|(i, x)| (x, i as u8 + 1)).collect();
        Ok(LabelContext {
            rho_ap,
            gamma,
            rho_a_inv,
        })
    }

    pub fn composite(&self) -> Permutation {
        let images: Vec<u8> = self
            .rho_ap
            .iter()
            .map(|&(_, m)| lookup(&self.rho_a_inv, lookup(&self.gamma, m)))
            .collect();
        Permutation::new(&images).expect("composite of bijections")
    }
}

/// `λ(P,A) = ρ_{A(P)}↾ γ_{P,A} ρ_A^{-1}`.
pub fn label(p: &Partition, a: &Subset) -> Result<Permutation> {
    Ok(LabelContext::new(p, a)?.composite())
}

/// The label read off directly: block `P_i` holds `a_{l_i}`, giving `[l_1, ..., l_r]`.
pub fn label_by_subscripts(p: &Partition, a: &Subset) -> Result<Permutation> {
    require_transversal(a, p)?;
    Ok(label_unchecked(p, a))
}

pub(crate) fn label_unchecked(p: &Partition, a: &Subset) -> Permutation {
    let mut images = [0u8; crate::combinatorics::MAX_N];
    for (j, x) in a.iter().enumerate() {
        images[p.block_of(x) - 1] = j as u8 + 1;
    }
    Permutation::from_images_unchecked(&images[..p.r()])
}

/// How often each permutation occurs as a label of a transversal pair.
pub fn label_spectrum(n: usize, r: usize) -> Result<BTreeMap<Permutation, u64>> {
    let mut out = BTreeMap::new();
    for p in enumerate_partitions(n, r)? {
        for a in transversals(&p) {
            *out.entry(label_unchecked(&p, &a)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example() {
        let p: Partition = "{{1},{2,3,5},{4,7},{6}}".parse().unwrap();
        let a = Subset::new(7, &[1, 4, 5, 6]).unwrap();
        let ctx = LabelContext::new(&p, &a).unwrap();
        assert_eq!(ctx.gamma, vec![(1, 1), (2, 5), (4, 4), (6, 6)]);
        assert_eq!(ctx.composite().cycle_form(), "(2 3)");
        assert_eq!(label_by_subscripts(&p, &a).unwrap().cycle_form(), "(2 3)");
        let ap = crate::combinatorics::min_transversal(&p);
        assert!(label(&p, &ap).unwrap().is_identity());
    }

    #[test]
    fn spectrum_totals() {
        let s = label_spectrum(7, 4).unwrap();
        assert_eq!(s.values().sum::<u64>(), 2240);
        let t = label_spectrum(5, 5).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.keys().next().unwrap().is_identity());
    }
}
