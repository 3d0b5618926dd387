//! Total self-maps of `[1, n]`, written on the right and composed left to right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{require_transversal, Partition, Subset, MAX_N};
use crate::error::{invalid, Result};

/// A map `[1, n] -> [1, n]`; `images[i - 1]` is the image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transformation {
    n: u8,
    images: [u8; MAX_N],
}

/// Result of acting on an r-subset: its image, or the absorbing zero when
/// the rank drops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionResult {
    Subset(Subset),
    Zero,
}

impl Transformation {
    pub fn new(images: &[u8]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_N {
            return Err(invalid(format!("degree {n} must lie in [1, {MAX_N}]")));
        }
        let mut buf = [0u8; MAX_N];
        for (slot, &x) in buf.iter_mut().zip(images) {
            if x == 0 || x as usize > n {
                return Err(invalid(format!("image {x} outside [1, {n}]")));
            }
            *slot = x;
        }
        Ok(Transformation { n: n as u8, images: buf })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Transformation::new(&(1..=n as u8).collect::<Vec<_>>())
    }

    pub fn constant(n: usize, value: u8) -> Result<Self> {
        Transformation::new(&vec![value; n])
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.n()]
    }

    /// The image of the point `x`.
    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize - 1]
    }

    fn image_mask(&self) -> u16 {
        self.images().iter().fold(0u16, |m, &x| m | 1 << (x - 1))
    }

    pub fn rank(&self) -> usize {
        self.image_mask().count_ones() as usize
    }

    pub fn image(&self) -> Subset {
        Subset::from_mask(self.n(), self.image_mask())
    }

    /// Fibres of the map, in canonical block order.
    pub fn kernel(&self) -> Partition {
        let mut by_value = [0u16; MAX_N];
        for (i, &x) in self.images().iter().enumerate() {
            by_value[x as usize - 1] |= 1 << i;
        }
        let mut masks: Vec<u16> = by_value.into_iter().filter(|&m| m != 0).collect();
        Partition::from_masks(self.n(), &mut masks)
    }

    pub fn is_idempotent(&self) -> bool {
        self.images().iter().all(|&x| self.apply(x) == x)
    }
}

/// `x (s t) = (x s) t`.
pub fn compose(s: &Transformation, t: &Transformation) -> Result<Transformation> {
    if s.n != t.n {
        return Err(invalid(format!("degrees {} and {} differ", s.n, t.n)));
    }
    let mut out = *s;
    for x in out.images[..s.n()].iter_mut() {
        *x = t.apply(*x);
    }
    Ok(out)
}

/// The idempotent with kernel `P` and image `A`.
pub fn idempotent(p: &Partition, a: &Subset) -> Result<Transformation> {
    require_transversal(a, p)?;
    let mut images = [0u8; MAX_N];
    for &block in p.block_masks() {
        let target = (block & a.mask()).trailing_zeros() as u8 + 1;
        for (i, slot) in images.iter_mut().enumerate().take(p.n()) {
            if block & (1 << i) != 0 {
                *slot = target;
            }
        }
    }
    Ok(Transformation {
        n: p.n() as u8,
        images,
    })
}

/// `A · t`: the image set if it keeps size `|A|`, otherwise zero.
pub fn act(a: &Subset, t: &Transformation) -> Result<ActionResult> {
    if a.n() != t.n() {
        return Err(invalid(format!("subset over [1, {}] and map of degree {}", a.n(), t.n())));
    }
    let mask = a.iter().fold(0u16, |m, x| m | 1 << (t.apply(x) - 1));
    Ok(if mask.count_ones() as usize == a.len() {
        ActionResult::Subset(Subset::from_mask(a.n(), mask))
    } else {
        ActionResult::Zero
    })
}

/// Every idempotent of `T_n`, grouped by image then kernel.
pub fn all_idempotents(n: usize) -> Result<Vec<Transformation>> {
    let mut out = Vec::new();
    for r in 1..=n {
        for p in crate::combinatorics::enumerate_partitions(n, r)? {
            for a in crate::combinatorics::transversals(&p) {
                out.push(idempotent(&p, &a)?);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Transformation {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| {
            crate::error::Error::Parse(format!("transformation must be bracketed: {s:?}"))
        })?;
        Transformation::new(&crate::combinatorics::parse_int_set(t)?)
    }
}

impl Serialize for Transformation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(d)?;
        Transformation::new(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Subset;

    #[test]
    fn example_idempotent() {
        let p = Partition::convex_from_minima(7, &[1, 2, 3, 4]).unwrap();
        let a = Subset::initial(7, 4).unwrap();
        let e = idempotent(&p, &a).unwrap();
        assert_eq!(e.to_string(), "[1,2,3,4,4,4,4]");
        assert_eq!(compose(&e, &e).unwrap(), e);
        assert_eq!(e.kernel(), p);
        assert_eq!(e.image(), a);
        assert_eq!(e.rank(), 4);
    }

    #[test]
    fn identity_and_constant() {
        let id = Transformation::identity(5).unwrap();
        assert_eq!(id.rank(), 5);
        assert_eq!(id.kernel().r(), 5);
        let c = Transformation::constant(5, 3).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.kernel().r(), 1);
        let a = Subset::initial(5, 4).unwrap();
        assert_eq!(act(&a, &c).unwrap(), ActionResult::Zero);
        assert_eq!(act(&a, &id).unwrap(), ActionResult::Subset(a));
    }

    #[test]
    fn running_action() {
        let p: Partition = "{{1},{2,3,5},{4,7},{6}}".parse().unwrap();
        let a = Subset::new(7, &[1, 4, 5, 6]).unwrap();
        let e = idempotent(&p, &a).unwrap();
        let from = Subset::new(7, &[1, 2, 4, 6]).unwrap();
        assert_eq!(act(&from, &e).unwrap(), ActionResult::Subset(a));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Transformation::new(&[1, 4, 2]).is_err());
        let p: Partition = "{{1},{2,3,5},{4,7},{6}}".parse().unwrap();
        let bad = Subset::new(7, &[1, 2, 5, 6]).unwrap();
        assert!(idempotent(&p, &bad).is_err());
        let s = Transformation::identity(3).unwrap();
        let t = Transformation::identity(4).unwrap();
        assert!(compose(&s, &t).is_err());
    }

    #[test]
    fn idempotent_count() {
        // number of idempotents of T_n is sum_k C(n,k) k^(n-k)
        assert_eq!(all_idempotents(4).unwrap().len(), 41);
        assert_eq!(all_idempotents(6).unwrap().len(), 1057);
    }
}
