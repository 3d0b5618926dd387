//! Permutations of `[1, r]`, composed left to right, with descent statistics.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::combinatorics::MAX_N;
use crate::error::{invalid, Error, Result};

/// A bijection of `[1, r]` in image form `[l_1, ..., l_r]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    r: u8,
    images: [u8; MAX_N],
}

/// Position of the rightmost descent start `v` and the offset `w` of the
/// last later entry smaller than `l_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentLocator {
    pub v: usize,
    pub w: usize,
}

impl Permutation {
    pub fn new(images: &[u8]) -> Result<Self> {
        let r = images.len();
        if r > MAX_N {
            return Err(invalid(format!("degree {r} exceeds {MAX_N}")));
        }
        let mut seen = 0u32;
        let mut buf = [0u8; MAX_N];
        for (slot, &x) in buf.iter_mut().zip(images) {
            if x == 0 || x as usize > r || seen & (1 << x) != 0 {
                return Err(invalid(format!("{images:?} is not a bijection of [1, {r}]")));
            }
            seen |= 1 << x;
            *slot = x;
        }
        Ok(Permutation { r: r as u8, images: buf })
    }

    pub(crate) fn from_images_unchecked(images: &[u8]) -> Self {
        let mut buf = [0u8; MAX_N];
        buf[..images.len()].copy_from_slice(images);
        Permutation {
            r: images.len() as u8,
            images: buf,
        }
    }

    pub fn identity(r: usize) -> Self {
        let v: Vec<u8> = (1..=r as u8).collect();
        Permutation::from_images_unchecked(&v)
    }

    /// The transposition `(a b)`.
    pub fn transposition(a: u8, b: u8, r: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 || a.max(b) as usize > r {
            return Err(invalid(format!("({a} {b}) is not a transposition in S_{r}")));
        }
        let mut p = Permutation::identity(r);
        p.images[a as usize - 1] = b;
        p.images[b as usize - 1] = a;
        Ok(p)
    }

    /// Build from disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<u8>], r: usize) -> Result<Self> {
        let mut p = Permutation::identity(r);
        let mut used = 0u32;
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x == 0 || x as usize > r || used & (1 << x) != 0 {
                    return Err(invalid(format!("bad cycle {c:?} in S_{r}")));
                }
                used |= 1 << x;
                p.images[x as usize - 1] = c[(i + 1) % c.len()];
            }
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.r as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree()]
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for (i, &x) in self.images().iter().enumerate() {
            out.images[x as usize - 1] = i as u8 + 1;
        }
        out
    }

    /// `x (self · other) = (x self) other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(invalid(format!("degrees {} and {} differ", self.r, other.r)));
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        let mut out = *self;
        for x in out.images[..self.degree()].iter_mut() {
            *x = other.apply(*x);
        }
        out
    }

    /// Nontrivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for start in 1..=self.r {
            if seen & (1 << start) != 0 || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen |= 1 << start;
            let mut x = self.apply(start);
            while x != start {
                seen |= 1 << x;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_form(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(u8::to_string).collect();
                format!("({})", parts.join(" "))
            })
            .collect()
    }

    pub fn image_form(&self) -> String {
        let parts: Vec<String> = self.images().iter().map(u8::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parse cycle form `(1 3 4)(2 5)` in degree `r`, or image form `[3,2,4,1]`.
    pub fn parse(s: &str, r: usize) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let p: Permutation = t.parse()?;
            if p.degree() != r {
                return Err(invalid(format!("{t} has degree {} not {r}", p.degree())));
            }
            return Ok(p);
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let elems = crate::combinatorics::parse_int_set(&body[..close])?;
            if !elems.is_empty() {
                cycles.push(elems);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(&cycles, r)
    }

    /// Number of positions followed somewhere later by a smaller entry.
    pub fn descent_number(&self) -> usize {
        let l = self.images();
        (0..l.len())
            .filter(|&k| l[k + 1..].iter().any(|&x| x < l[k]))
            .count()
    }

    /// Length in the Coxeter generators (number of inversions).
    pub fn inversions(&self) -> usize {
        let l = self.images();
        (0..l.len())
            .map(|k| l[k + 1..].iter().filter(|&&x| x < l[k]).count())
            .sum()
    }

    pub fn rightmost_descent(&self) -> Option<DescentLocator> {
        let l = self.images();
        let v = (0..l.len()).rev().find(|&k| l[k + 1..].iter().any(|&x| x < l[k]))?;
        let last = (v + 1..l.len()).rev().find(|&u| l[u] < l[v])?;
        Some(DescentLocator { v: v + 1, w: last - v })
    }

    /// `(k, l)` with `self = ξ_{k,l}`, when the descent number is 1.
    pub fn classify_descent_one(&self) -> Option<(usize, usize)> {
        if self.descent_number() != 1 {
            return None;
        }
        let loc = self.rightmost_descent()?;
        let xi = contiguous_cycle(loc.v, loc.w, self.degree()).ok()?;
        (xi == *self).then_some((loc.v, loc.w))
    }

    /// Split off the rightmost descent: `self = ξ_{v,w} · rest`, where `rest`
    /// moves `l_v` behind `l_{v+w}` and has one descent fewer.
    pub fn split_rightmost_descent(&self) -> Option<(DescentLocator, Permutation, Permutation)> {
        let loc = self.rightmost_descent()?;
        let mut l = self.images().to_vec();
        let x = l.remove(loc.v - 1);
        l.insert(loc.v - 1 + loc.w, x);
        let rest = Permutation::from_images_unchecked(&l);
        let xi = contiguous_cycle(loc.v, loc.w, self.degree()).expect("locator in range");
        Some((loc, xi, rest))
    }
}

/// `ξ_{k,l} = (k+l ... k+1 k)`: sends `k` to `k+l` and shifts `[k+1, k+l]`
/// down by one.
pub fn contiguous_cycle(k: usize, l: usize, r: usize) -> Result<Permutation> {
    if k == 0 || l == 0 || k + l > r {
        return Err(invalid(format!("ξ_{{{k},{l}}} needs 1 ≤ k < k+l ≤ r = {r}")));
    }
    let mut p = Permutation::identity(r);
    p.images[k - 1] = (k + l) as u8;
    for x in k + 1..=k + l {
        p.images[x - 1] = x as u8 - 1;
    }
    Ok(p)
}

/// All permutations of `[1, r]` in lexicographic image order.
pub fn all_permutations(r: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=r as u8).collect();
    loop {
        out.push(Permutation::from_images_unchecked(&cur));
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        assert_eq!(self.r, rhs.r, "degree mismatch");
        self.compose_unchecked(&rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_form())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.image_form())
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    /// Image form `[3,2,4,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("image form must be bracketed: {s:?}")))?;
        Permutation::new(&crate::combinatorics::parse_int_set(inner)?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(d)?;
        Permutation::new(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn notations() {
        let x = p("[3,2,4,1]");
        assert_eq!(x.cycle_form(), "(1 3 4)");
        assert_eq!(Permutation::parse("(1 3 4)", 4).unwrap(), x);
        assert_eq!(Permutation::identity(3).cycle_form(), "()");
        assert_eq!(Permutation::parse("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse("(2 3)(4 5)", 5).unwrap().cycle_form(), "(2 3)(4 5)");
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::new(&[1, 1, 2]).is_err());
    }

    #[test]
    fn descents() {
        assert_eq!(p("[3,2,4,1]").descent_number(), 3);
        assert_eq!(Permutation::identity(5).descent_number(), 0);
        assert_eq!(
            p("[4,2,3,1]").rightmost_descent(),
            Some(DescentLocator { v: 3, w: 1 })
        );
        assert_eq!(Permutation::identity(4).rightmost_descent(), None);
    }

    #[test]
    fn contiguous_cycles() {
        assert_eq!(contiguous_cycle(1, 2, 3).unwrap(), p("[3,1,2]"));
        assert_eq!(
            contiguous_cycle(2, 1, 4).unwrap(),
            Permutation::transposition(2, 3, 4).unwrap()
        );
        assert_eq!(contiguous_cycle(2, 3, 5).unwrap().cycle_form(), "(2 5 4 3)");
        assert!(contiguous_cycle(3, 2, 4).is_err());
        assert_eq!(
            Permutation::transposition(2, 3, 4).unwrap().classify_descent_one(),
            Some((2, 1))
        );
        assert_eq!(Permutation::identity(4).classify_descent_one(), None);
    }

    #[test]
    fn composition_is_left_to_right() {
        let s = Permutation::transposition(1, 2, 3).unwrap();
        let t = Permutation::transposition(2, 3, 3).unwrap();
        // 1 -> 2 -> 3
        assert_eq!((s * t).apply(1), 3);
        assert!((s * s.inverse()).is_identity());
    }

    #[test]
    fn split_descent() {
        let x = p("[4,2,3,1]");
        let (loc, xi, rest) = x.split_rightmost_descent().unwrap();
        assert_eq!(loc, DescentLocator { v: 3, w: 1 });
        assert_eq!(xi.cycle_form(), "(3 4)");
        assert_eq!(rest, p("[4,2,1,3]"));
        assert_eq!(xi * rest, x);
    }

    #[test]
    fn enumeration() {
        assert_eq!(all_permutations(5).len(), 120);
        assert_eq!(all_permutations(0).len(), 1);
    }
}
