//! Subsets and set partitions of `[1, n]`.
//!
//! An r-subset of `[1, n]` is an element of `J`, an r-block partition an
//! element of `I`. Both are stored as bitmasks over at most [`MAX_N`] points,
//! with bit `i - 1` standing for the point `i`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 16;

fn check_params(n: usize, r: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(invalid(format!("n = {n} must lie in [1, {MAX_N}]")));
    }
    if r == 0 || r > n {
        return Err(invalid(format!("r = {r} must lie in [1, n = {n}]")));
    }
    Ok(())
}

fn bit(x: u8) -> u16 {
    1u16 << (x - 1)
}

fn mask_elements(mask: u16) -> impl Iterator<Item = u8> {
    (1..=MAX_N as u8).filter(move |&x| mask & bit(x) != 0)
}

/// An r-element subset of `[1, n]`.
///
/// Ordering is by ground set size, then cardinality, then `<_lex`: the first
/// position where the sorted element lists differ decides.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    n: u8,
    mask: u16,
}

impl Subset {
    pub fn new(n: usize, elements: &[u8]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(invalid(format!("n = {n} must lie in [1, {MAX_N}]")));
        }
        if elements.is_empty() {
            return Err(invalid("a subset needs at least one element"));
        }
        let mut mask = 0u16;
        for &x in elements {
            if x == 0 || x as usize > n {
                return Err(invalid(format!("element {x} outside [1, {n}]")));
            }
            if mask & bit(x) != 0 {
                return Err(invalid(format!("element {x} repeated")));
            }
            mask |= bit(x);
        }
        Ok(Subset { n: n as u8, mask })
    }

    pub(crate) fn from_mask(n: usize, mask: u16) -> Self {
        debug_assert!(mask != 0 && (n == MAX_N || mask >> n == 0));
        Subset { n: n as u8, mask }
    }

    /// The initial segment `[1, r]`.
    pub fn initial(n: usize, r: usize) -> Result<Self> {
        check_params(n, r)?;
        Ok(Subset::from_mask(n, ((1u32 << r) - 1) as u16))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub fn contains(&self, x: u8) -> bool {
        x >= 1 && x as usize <= MAX_N && self.mask & bit(x) != 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<u8> {
        mask_elements(self.mask).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> {
        mask_elements(self.mask)
    }

    /// The i-th smallest element, 1-based.
    pub fn nth(&self, i: usize) -> u8 {
        self.iter().nth(i - 1).expect("index within subset")
    }

    /// 1-based rank of `x` inside the subset.
    pub fn rank_of(&self, x: u8) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        Some((self.mask & (bit(x) - 1)).count_ones() as usize + 1)
    }

    /// Replace `old` by `new`, keeping the cardinality.
    pub fn replace(&self, old: u8, new: u8) -> Result<Self> {
        if !self.contains(old) || self.contains(new) || new == 0 || new as usize > self.n() {
            return Err(invalid(format!("cannot replace {old} by {new} in {self}")));
        }
        Ok(Subset::from_mask(self.n(), (self.mask & !bit(old)) | bit(new)))
    }

    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let diff = self.mask ^ other.mask;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.mask & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Parse the text form `{1,4,5,6}` over the ground set `[1, n]`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Subset::new(n, &parse_int_set(s)?)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, mask: u16) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in mask_elements(mask).enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, self.mask)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Parse `{1,2,3}` (braces optional, commas or spaces as separators).
pub fn parse_int_set(s: &str) -> Result<Vec<u8>> {
    let t = s.trim();
    let t = t.strip_prefix('{').unwrap_or(t);
    let t = t.strip_suffix('}').unwrap_or(t);
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u8>()
                .map_err(|_| Error::Parse(format!("bad integer {p:?} in {s:?}")))
        })
        .collect()
}

/// A partition of `[1, n]` into r nonempty blocks, blocks ordered by their
/// minima.
///
/// The canonical encoding is the restricted growth string: entry `i - 1`
/// holds the 0-based index of the block containing `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Partition {
    n: u8,
    r: u8,
    rgs: [u8; MAX_N],
    blocks: [u16; MAX_N],
}

impl Partition {
    /// Build from arbitrary blocks; they are sorted into canonical order.
    pub fn from_blocks<B: AsRef<[u8]>>(n: usize, blocks: &[B]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(invalid(format!("n = {n} must lie in [1, {MAX_N}]")));
        }
        let mut masks = Vec::with_capacity(blocks.len());
        let mut seen = 0u16;
        for b in blocks {
            let b = b.as_ref();
            if b.is_empty() {
                return Err(invalid("partition blocks must be nonempty"));
            }
            let mut m = 0u16;
            for &x in b {
                if x == 0 || x as usize > n {
                    return Err(invalid(format!("element {x} outside [1, {n}]")));
                }
                if (seen | m) & bit(x) != 0 {
                    return Err(invalid(format!("element {x} occurs twice")));
                }
                m |= bit(x);
            }
            seen |= m;
            masks.push(m);
        }
        let full = if n == MAX_N { u16::MAX } else { (1u16 << n) - 1 };
        if seen != full {
            return Err(invalid(format!("blocks do not cover [1, {n}]")));
        }
        Ok(Self::from_masks(n, &mut masks))
    }

    pub(crate) fn from_masks(n: usize, masks: &mut [u16]) -> Self {
        masks.sort_by_key(|m| m.trailing_zeros());
        let mut rgs = [0u8; MAX_N];
        let mut blocks = [0u16; MAX_N];
        for (i, &m) in masks.iter().enumerate() {
            blocks[i] = m;
            for x in mask_elements(m) {
                rgs[x as usize - 1] = i as u8;
            }
        }
        Partition {
            n: n as u8,
            r: masks.len() as u8,
            rgs,
            blocks,
        }
    }

    /// Build from a restricted growth string (0-based block indices).
    pub fn from_rgs(rgs: &[u8]) -> Result<Self> {
        let n = rgs.len();
        if n == 0 || n > MAX_N {
            return Err(invalid(format!("n = {n} must lie in [1, {MAX_N}]")));
        }
        let mut next = 0u8;
        let mut masks = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            if b > next {
                return Err(invalid("not a restricted growth string"));
            }
            if b == next {
                next += 1;
                masks.push(0);
            }
            masks[b as usize] |= 1 << i;
        }
        Ok(Self::from_masks(n, &mut masks))
    }

    /// The partition into intervals starting at the given increasing minima.
    /// The first minimum must be 1.
    pub fn convex_from_minima(n: usize, minima: &[u8]) -> Result<Self> {
        if minima.first() != Some(&1) || minima.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!("bad interval starts {minima:?}")));
        }
        let mut blocks = Vec::with_capacity(minima.len());
        for (i, &lo) in minima.iter().enumerate() {
            let hi = minima.get(i + 1).map_or(n as u8, |&m| m - 1);
            blocks.push((lo..=hi).collect::<Vec<u8>>());
        }
        Partition::from_blocks(n, &blocks)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of blocks.
    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs[..self.n()]
    }

    pub fn block_masks(&self) -> &[u16] {
        &self.blocks[..self.r()]
    }

    /// Block `i` (1-based) as a sorted element list.
    pub fn block(&self, i: usize) -> Vec<u8> {
        mask_elements(self.blocks[i - 1]).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<u8>> {
        (1..=self.r()).map(|i| self.block(i)).collect()
    }

    /// 1-based index of the block containing `x`.
    pub fn block_of(&self, x: u8) -> usize {
        self.rgs[x as usize - 1] as usize + 1
    }

    /// Minimum of block `i` (1-based).
    pub fn min_of(&self, i: usize) -> u8 {
        self.blocks[i - 1].trailing_zeros() as u8 + 1
    }

    pub fn minima(&self) -> Vec<u8> {
        (1..=self.r()).map(|i| self.min_of(i)).collect()
    }

    /// Every block is an interval.
    pub fn is_convex(&self) -> bool {
        self.block_masks().iter().all(|&m| {
            let shifted = m >> m.trailing_zeros();
            shifted & (shifted.wrapping_add(1)) == 0
        })
    }

    /// Move `x` into block `to` (1-based, in the current numbering). Fails if
    /// this would empty the source block.
    pub fn with_moved(&self, x: u8, to: usize) -> Result<Self> {
        let from = self.block_of(x);
        if from == to {
            return Ok(*self);
        }
        let mut masks = self.block_masks().to_vec();
        masks[from - 1] &= !bit(x);
        if masks[from - 1] == 0 {
            return Err(invalid(format!("moving {x} would empty its block")));
        }
        masks[to - 1] |= bit(x);
        Ok(Self::from_masks(self.n(), &mut masks))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.r.cmp(&other.r))
            .then_with(|| self.rgs().cmp(other.rgs()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &m) in self.block_masks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_set(f, m)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parse `{{1},{2,3,5},{4,7},{6}}`; `n` is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("partition must be braced: {s:?}")))?;
        let mut blocks = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::Parse(format!("expected '{{' in {s:?}")))?;
            let close = open
                .find('}')
                .ok_or_else(|| Error::Parse(format!("unclosed block in {s:?}")))?;
            blocks.push(parse_int_set(&open[..close])?);
            rest = open[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0) as usize;
        Partition::from_blocks(n, &blocks)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.blocks())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<u8>>::deserialize(d)?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0) as usize;
        Partition::from_blocks(n, &blocks).map_err(serde::de::Error::custom)
    }
}

/// All r-subsets of `[1, n]` in `<_lex` order, starting at `[1, r]`.
pub fn enumerate_subsets(n: usize, r: usize) -> Result<SubsetIter> {
    check_params(n, r)?;
    Ok(SubsetIter {
        n,
        current: Some((1..=r as u8).collect()),
    })
}

#[derive(Clone, Debug)]
pub struct SubsetIter {
    n: usize,
    current: Option<Vec<u8>>,
}

impl Iterator for SubsetIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.current.take()?;
        let out = Subset::new(self.n, &cur).expect("valid combination");
        let r = cur.len();
        let mut next = cur;
        // rightmost position that can still grow
        if let Some(i) = (0..r).rev().find(|&i| (next[i] as usize) < self.n - (r - 1 - i)) {
            next[i] += 1;
            for j in i + 1..r {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All partitions of `[1, n]` into exactly r blocks, in lexicographic order
/// of their restricted growth strings.
pub fn enumerate_partitions(n: usize, r: usize) -> Result<PartitionIter> {
    check_params(n, r)?;
    let mut first = vec![0u8; n];
    for (j, slot) in first[n - (r - 1)..].iter_mut().enumerate() {
        *slot = j as u8 + 1;
    }
    Ok(PartitionIter {
        r,
        current: Some(first),
    })
}

#[derive(Clone, Debug)]
pub struct PartitionIter {
    r: usize,
    current: Option<Vec<u8>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_rgs(&cur).expect("valid growth string");
        let n = cur.len();
        let top = self.r as u8 - 1;
        let mut a = cur;
        for i in (1..n).rev() {
            let prefix_max = *a[..i].iter().max().expect("nonempty prefix");
            let v = a[i] + 1;
            if v > prefix_max + 1 || v > top {
                continue;
            }
            let m = prefix_max.max(v);
            let missing = (top - m) as usize;
            let room = n - 1 - i;
            if missing > room {
                continue;
            }
            a[i] = v;
            for slot in a[i + 1..n - missing].iter_mut() {
                *slot = 0;
            }
            for (j, slot) in a[n - missing..].iter_mut().enumerate() {
                *slot = m + 1 + j as u8;
            }
            self.current = Some(a);
            break;
        }
        Some(out)
    }
}

fn check_same_shape(a: &Subset, p: &Partition) -> Result<()> {
    if a.n() != p.n() || a.len() != p.r() {
        return Err(invalid(format!(
            "subset {a} (n = {}, r = {}) does not match partition {p} (n = {}, r = {})",
            a.n(),
            a.len(),
            p.n(),
            p.r()
        )));
    }
    Ok(())
}

/// `A ⊥ P`: every block of `P` holds exactly one element of `A`.
pub fn is_transversal(a: &Subset, p: &Partition) -> Result<bool> {
    check_same_shape(a, p)?;
    Ok(transversal_unchecked(a, p))
}

pub(crate) fn transversal_unchecked(a: &Subset, p: &Partition) -> bool {
    a.n() == p.n()
        && p
            .block_masks()
            .iter()
            .all(|&m| (m & a.mask()).count_ones() == 1)
}

pub(crate) fn require_transversal(a: &Subset, p: &Partition) -> Result<()> {
    if is_transversal(a, p)? {
        Ok(())
    } else {
        Err(Error::TransversalityViolation {
            partition: p.to_string(),
            subset: a.to_string(),
        })
    }
}

/// `A(P)`: the set of block minima, the `<_lex`-least transversal.
pub fn min_transversal(p: &Partition) -> Subset {
    let mask = p
        .block_masks()
        .iter()
        .fold(0u16, |acc, &m| acc | (m & m.wrapping_neg()));
    Subset::from_mask(p.n(), mask)
}

/// All transversals of `P`, in `<_lex` order.
pub fn transversals(p: &Partition) -> Vec<Subset> {
    let mut out = vec![0u16];
    for &m in p.block_masks() {
        out = out
            .into_iter()
            .flat_map(|acc| mask_elements(m).map(move |x| acc | bit(x)))
            .collect();
    }
    let mut subsets: Vec<Subset> = out.into_iter().map(|m| Subset::from_mask(p.n(), m)).collect();
    subsets.sort();
    subsets
}

/// Number of pairs `(P, A)` with `A ⊥ P`.
pub fn count_transversal_pairs(n: usize, r: usize) -> Result<u64> {
    let mut total = 0u64;
    for p in enumerate_partitions(n, r)? {
        let per = p
            .block_masks()
            .iter()
            .try_fold(1u64, |acc, m| acc.checked_mul(m.count_ones() as u64))
            .ok_or(Error::Overflow("transversal pairs"))?;
        total = total
            .checked_add(per)
            .ok_or(Error::Overflow("transversal pairs"))?;
    }
    Ok(total)
}

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// Stirling number of the second kind `S(n, k)` with overflow detection.
pub fn stirling2(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let mut row = vec![0u64; k as usize + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..=k as usize).rev() {
            row[j] = (j as u64)
                .checked_mul(row[j])
                .and_then(|v| v.checked_add(row[j - 1]))
                .ok_or(Error::Overflow("Stirling number"))?;
        }
        row[0] = 0;
    }
    Ok(row[k as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_partition() -> Partition {
        "{{1},{2,3,5},{4,7},{6}}".parse().unwrap()
    }

    #[test]
    fn subset_stream_basics() {
        let all: Vec<_> = enumerate_subsets(4, 2).unwrap().collect();
        assert_eq!(all.len(), 6);
        let firsts: Vec<String> = all.iter().take(3).map(|s| s.to_string()).collect();
        assert_eq!(firsts, ["{1,2}", "{1,3}", "{1,4}"]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let single: Vec<_> = enumerate_subsets(5, 5).unwrap().collect();
        assert_eq!(single, vec![Subset::initial(5, 5).unwrap()]);
        assert_eq!(enumerate_subsets(7, 4).unwrap().count(), 35);
    }

    #[test]
    fn partition_stream_basics() {
        assert_eq!(enumerate_partitions(7, 4).unwrap().count(), 350);
        assert_eq!(enumerate_partitions(4, 2).unwrap().count(), 7);
        let all: Vec<_> = enumerate_partitions(6, 6).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].block_masks().iter().all(|m| m.count_ones() == 1));
        let ps: Vec<_> = enumerate_partitions(6, 3).unwrap().collect();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(enumerate_subsets(3, 4), Err(Error::InvalidParameters(_))));
        assert!(matches!(enumerate_partitions(3, 0), Err(Error::InvalidParameters(_))));
        assert!(count_transversal_pairs(2, 3).is_err());
    }

    #[test]
    fn running_example_transversals() {
        let p = running_partition();
        let a = Subset::new(7, &[1, 4, 5, 6]).unwrap();
        let bad = Subset::new(7, &[1, 2, 5, 6]).unwrap();
        assert!(is_transversal(&a, &p).unwrap());
        assert!(!is_transversal(&bad, &p).unwrap());
        assert_eq!(min_transversal(&p).to_string(), "{1,2,4,6}");
        let wrong_r = Subset::new(7, &[1, 2, 3]).unwrap();
        assert!(is_transversal(&wrong_r, &p).is_err());
        assert!(matches!(
            require_transversal(&bad, &p),
            Err(Error::TransversalityViolation { .. })
        ));
    }

    #[test]
    fn text_forms() {
        let p = running_partition();
        assert_eq!(p.to_string(), "{{1},{2,3,5},{4,7},{6}}");
        let q: Partition = "{ {6}, {4,7},{1}, {5, 3, 2} }".parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1],[2,3,5],[4,7],[6]]");
        let back: Partition = serde_json::from_str("[[1],[2,3,5],[4,7],[6]]").unwrap();
        assert_eq!(back, p);
        assert!("{{1},{3}}".parse::<Partition>().is_err());
        assert!("{{1,2},{2}}".parse::<Partition>().is_err());
        assert_eq!(Subset::parse("{1,4,5,6}", 7).unwrap().to_string(), "{1,4,5,6}");
    }

    #[test]
    fn convexity_and_moves() {
        let p = Partition::convex_from_minima(7, &[1, 2, 3, 4]).unwrap();
        assert_eq!(p.to_string(), "{{1},{2},{3},{4,5,6,7}}");
        assert!(p.is_convex());
        assert!(!running_partition().is_convex());
        let q = p.with_moved(4, 3).unwrap();
        assert_eq!(q.to_string(), "{{1},{2},{3,4},{5,6,7}}");
        assert!(p.with_moved(2, 1).is_err());
    }

    #[test]
    fn transversal_listing() {
        let p = running_partition();
        let ts = transversals(&p);
        assert_eq!(ts.len(), 6);
        assert_eq!(ts[0], min_transversal(&p));
    }

    #[test]
    fn counting() {
        assert_eq!(count_transversal_pairs(7, 4).unwrap(), 2240);
        assert_eq!(count_transversal_pairs(5, 5).unwrap(), 1);
        assert_eq!(binomial(7, 4).unwrap(), 35);
        assert_eq!(stirling2(7, 4).unwrap(), 350);
        assert!(binomial(200, 100).is_err());
        assert!(stirling2(60, 20).is_err());
    }
}
