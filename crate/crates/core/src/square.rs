//! Squares `(P,Q,A,B)`, the three singularity tests, rectangular bands and
//! the label graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use petgraph::graph::UnGraph;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    enumerate_partitions, transversal_unchecked, transversals, Partition, Subset,
};
use crate::error::{invalid, Error, Result};
use crate::label::label_unchecked;
use crate::permutation::Permutation;
use crate::transformation::{all_idempotents, compose, idempotent, Transformation};

/// Largest degree for which the exhaustive idempotent search runs by default.
pub const BRUTE_FORCE_MAX_N: usize = 6;

/// Rows `P, Q` and columns `A, B` with `{A,B} ⊥ {P,Q}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSquare")]
pub struct Square {
    #[serde(rename = "P")]
    pub p: Partition,
    #[serde(rename = "Q")]
    pub q: Partition,
    #[serde(rename = "A")]
    pub a: Subset,
    #[serde(rename = "B")]
    pub b: Subset,
}

#[derive(Deserialize)]
struct RawSquare {
    #[serde(rename = "P")]
    p: Partition,
    #[serde(rename = "Q")]
    q: Partition,
    #[serde(rename = "A")]
    a: Vec<u8>,
    #[serde(rename = "B")]
    b: Vec<u8>,
}

impl TryFrom<RawSquare> for Square {
    type Error = Error;

    fn try_from(raw: RawSquare) -> Result<Self> {
        let n = raw.p.n();
        Square::new(raw.p, raw.q, Subset::new(n, &raw.a)?, Subset::new(n, &raw.b)?)
    }
}

/// The labels at the four corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareLabels {
    #[serde(rename = "PA")]
    pub pa: Permutation,
    #[serde(rename = "PB")]
    pub pb: Permutation,
    #[serde(rename = "QA")]
    pub qa: Permutation,
    #[serde(rename = "QB")]
    pub qb: Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceKind {
    #[serde(rename = "LR")]
    Lr,
    #[serde(rename = "UD")]
    Ud,
    Both,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityEvidence {
    pub kind: EvidenceKind,
    pub witness: Option<Transformation>,
}

impl Square {
    pub fn new(p: Partition, q: Partition, a: Subset, b: Subset) -> Result<Self> {
        let sq = Square { p, q, a, b };
        sq.validate()?;
        Ok(sq)
    }

    pub(crate) fn new_unchecked(p: Partition, q: Partition, a: Subset, b: Subset) -> Self {
        Square { p, q, a, b }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.p.n();
        if [self.q.n(), self.a.n(), self.b.n()].iter().any(|&m| m != n)
            || self.p.r() != self.q.r()
            || self.a.len() != self.p.r()
            || self.b.len() != self.p.r()
        {
            return Err(Error::NotASquare(format!("{self}: mismatched n or r")));
        }
        for (x, y) in [(&self.a, &self.p), (&self.a, &self.q), (&self.b, &self.p), (&self.b, &self.q)] {
            if !transversal_unchecked(x, y) {
                return Err(Error::NotASquare(format!("{self}: {x} is not a transversal of {y}")));
            }
        }
        Ok(())
    }

    /// Neither degenerate in rows nor in columns.
    pub fn is_proper(&self) -> bool {
        self.p != self.q && self.a != self.b
    }

    pub fn labels(&self) -> SquareLabels {
        SquareLabels {
            pa: label_unchecked(&self.p, &self.a),
            pb: label_unchecked(&self.p, &self.b),
            qa: label_unchecked(&self.q, &self.a),
            qb: label_unchecked(&self.q, &self.b),
        }
    }

    /// The same square with rows swapped.
    pub fn swap_rows(&self) -> Square {
        Square::new_unchecked(self.q, self.p, self.a, self.b)
    }

    /// The same square with columns swapped.
    pub fn swap_columns(&self) -> Square {
        Square::new_unchecked(self.p, self.q, self.b, self.a)
    }

    /// Corners in the order `PA, PB, QA, QB`.
    pub fn corners(&self) -> [(Partition, Subset); 4] {
        [(self.p, self.a), (self.p, self.b), (self.q, self.a), (self.q, self.b)]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p, self.q, self.a, self.b)
    }
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn block_pairs(x: &Partition, a: &Subset, b: &Subset) -> Vec<(u16, u16)> {
    let mut v: Vec<(u16, u16)> = x
        .block_masks()
        .iter()
        .map(|&m| (m & a.mask(), m & b.mask()))
        .collect();
    v.sort_unstable();
    v
}

/// The pair families `(A ∩ P_i, B ∩ P_i)` and `(A ∩ Q_i, B ∩ Q_i)` coincide.
pub fn is_singular_sq2(sq: &Square) -> Result<bool> {
    sq.validate()?;
    Ok(sq2_unchecked(sq))
}

pub(crate) fn sq2_unchecked(sq: &Square) -> bool {
    block_pairs(&sq.p, &sq.a, &sq.b) == block_pairs(&sq.q, &sq.a, &sq.b)
}

/// `λ(P,A)^{-1} λ(P,B) = λ(Q,A)^{-1} λ(Q,B)`.
pub fn is_singular_sq3(sq: &Square) -> Result<bool> {
    sq.validate()?;
    Ok(sq3_labels(&sq.labels()))
}

pub(crate) fn sq3_labels(l: &SquareLabels) -> bool {
    l.pa.inverse() * l.pb == l.qa.inverse() * l.qb
}

struct Corners {
    pa: Transformation,
    pb: Transformation,
    qa: Transformation,
    qb: Transformation,
}

impl Corners {
    fn of(sq: &Square) -> Corners {
        let e = |p: &Partition, a: &Subset| idempotent(p, a).expect("validated square");
        Corners {
            pa: e(&sq.p, &sq.a),
            pb: e(&sq.p, &sq.b),
            qa: e(&sq.q, &sq.a),
            qb: e(&sq.q, &sq.b),
        }
    }
}

fn c(s: &Transformation, t: &Transformation) -> Transformation {
    compose(s, t).expect("equal degrees")
}

fn satisfies_lr(e: &Transformation, k: &Corners) -> bool {
    c(e, &k.pa) == k.pa && c(e, &k.qa) == k.qa && c(&k.pa, e) == k.pb && c(&k.qa, e) == k.qb
}

fn satisfies_ud(e: &Transformation, k: &Corners) -> bool {
    c(&k.pa, e) == k.pa && c(&k.pb, e) == k.pb && c(e, &k.pa) == k.qa && c(e, &k.pb) == k.qb
}

/// Does `e` satisfy the left-right equations for this square?
pub fn verify_lr_witness(sq: &Square, e: &Transformation) -> bool {
    e.is_idempotent() && e.n() == sq.p.n() && satisfies_lr(e, &Corners::of(sq))
}

/// Does `e` satisfy the up-down equations for this square?
pub fn verify_ud_witness(sq: &Square, e: &Transformation) -> bool {
    e.is_idempotent() && e.n() == sq.p.n() && satisfies_ud(e, &Corners::of(sq))
}

/// The map sending the element of `A ∩ P_i` to the element of `B ∩ P_i`
/// and fixing everything else.
pub fn constructive_witness(sq: &Square) -> Transformation {
    let mut images: Vec<u8> = (1..=sq.p.n() as u8).collect();
    for &blk in sq.p.block_masks() {
        let x = (blk & sq.a.mask()).trailing_zeros() as usize;
        let y = (blk & sq.b.mask()).trailing_zeros() as u8 + 1;
        images[x] = y;
    }
    Transformation::new(&images).expect("points in range")
}

/// Search the given idempotents for left-right and up-down witnesses.
pub fn brute_force_evidence(sq: &Square, idempotents: &[Transformation]) -> SingularityEvidence {
    let k = Corners::of(sq);
    let lr = idempotents.iter().find(|e| satisfies_lr(e, &k));
    let ud = idempotents.iter().find(|e| satisfies_ud(e, &k));
    match (lr, ud) {
        (Some(e), Some(_)) => SingularityEvidence {
            kind: EvidenceKind::Both,
            witness: Some(*e),
        },
        (Some(e), None) => SingularityEvidence {
            kind: EvidenceKind::Lr,
            witness: Some(*e),
        },
        (None, Some(e)) => SingularityEvidence {
            kind: EvidenceKind::Ud,
            witness: Some(*e),
        },
        (None, None) => SingularityEvidence {
            kind: EvidenceKind::None,
            witness: None,
        },
    }
}

/// A verified witness for singularity, or `none`.
///
/// Squares passing the pair test get the constructive left-right witness.
/// Otherwise all idempotents of `T_n` are searched when `n` is at most
/// [`BRUTE_FORCE_MAX_N`]; above that the pair test is taken as final.
pub fn find_singularizing_idempotent(sq: &Square) -> Result<SingularityEvidence> {
    sq.validate()?;
    if sq2_unchecked(sq) {
        let e = constructive_witness(sq);
        if verify_lr_witness(sq, &e) {
            return Ok(SingularityEvidence {
                kind: EvidenceKind::Lr,
                witness: Some(e),
            });
        }
    }
    if sq.p.n() <= BRUTE_FORCE_MAX_N {
        let ev = brute_force_evidence(sq, &all_idempotents(sq.p.n())?);
        if ev.kind != EvidenceKind::None {
            return Ok(ev);
        }
    }
    Ok(SingularityEvidence {
        kind: EvidenceKind::None,
        witness: None,
    })
}

/// `e_{P,A} e_{Q,B} = e_{P,B}`.
pub fn is_rectangular_band(sq: &Square) -> Result<bool> {
    sq.validate()?;
    let k = Corners::of(sq);
    Ok(c(&k.pa, &k.qb) == k.pb)
}

/// The four corner idempotents are closed under multiplication.
pub fn is_closed_band(sq: &Square) -> Result<bool> {
    sq.validate()?;
    let k = Corners::of(sq);
    let set = [k.pa, k.pb, k.qa, k.qb];
    Ok(set
        .iter()
        .all(|x| set.iter().all(|y| set.contains(&c(x, y)))))
}

/// Per-partition transversals and their labels, shared by the enumerators.
#[derive(Clone, Debug)]
pub struct SquareIndex {
    pub n: usize,
    pub r: usize,
    pub partitions: Vec<Partition>,
    /// For each partition, its transversals in `<_lex` order with labels.
    pub rows: Vec<Vec<(Subset, Permutation)>>,
}

impl SquareIndex {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        let partitions: Vec<Partition> = enumerate_partitions(n, r)?.collect();
        let rows = partitions
            .par_iter()
            .map(|p| {
                transversals(p)
                    .into_iter()
                    .map(|a| (a, label_unchecked(p, &a)))
                    .collect()
            })
            .collect();
        Ok(SquareIndex {
            n,
            r,
            partitions,
            rows,
        })
    }

    /// Common transversals of rows `i` and `j` with both labels.
    fn common(&self, i: usize, j: usize) -> Vec<(Subset, Permutation, Permutation)> {
        let (x, y) = (&self.rows[i], &self.rows[j]);
        let mut out = Vec::new();
        let (mut s, mut t) = (0, 0);
        while s < x.len() && t < y.len() {
            match x[s].0.cmp(&y[t].0) {
                std::cmp::Ordering::Less => s += 1,
                std::cmp::Ordering::Greater => t += 1,
                std::cmp::Ordering::Equal => {
                    out.push((x[s].0, x[s].1, y[t].1));
                    s += 1;
                    t += 1;
                }
            }
        }
        out
    }

    fn squares_for_row(&self, i: usize, only_singular: bool) -> Vec<Square> {
        let mut out = Vec::new();
        for j in 0..self.partitions.len() {
            let common = self.common(i, j);
            if common.is_empty() {
                continue;
            }
            let (p, q) = (self.partitions[i], self.partitions[j]);
            if only_singular {
                // (A,B) is singular iff λ(Q,A)λ(P,A)^{-1} = λ(Q,B)λ(P,B)^{-1}
                let keys: Vec<Permutation> = common.iter().map(|(_, lp, lq)| *lq * lp.inverse()).collect();
                for (s, (a, _, _)) in common.iter().enumerate() {
                    for (t, (b, _, _)) in common.iter().enumerate() {
                        if keys[s] == keys[t] {
                            out.push(Square::new_unchecked(p, q, *a, *b));
                        }
                    }
                }
            } else {
                for (a, _, _) in &common {
                    for (b, _, _) in &common {
                        out.push(Square::new_unchecked(p, q, *a, *b));
                    }
                }
            }
        }
        out
    }

    fn collect(&self, only_singular: bool) -> Vec<Square> {
        (0..self.partitions.len())
            .into_par_iter()
            .map(|i| self.squares_for_row(i, only_singular))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn squares(&self) -> Vec<Square> {
        self.collect(false)
    }

    pub fn singular_squares(&self) -> Vec<Square> {
        self.collect(true)
    }

    /// Ordered singular squares, split into all and proper ones.
    pub fn count_singular(&self) -> SingularCounts {
        let per_row: Vec<(u64, u64)> = (0..self.partitions.len())
            .into_par_iter()
            .map(|i| {
                let mut all = 0u64;
                let mut proper = 0u64;
                for j in 0..self.partitions.len() {
                    let common = self.common(i, j);
                    let mut classes: HashMap<Permutation, u64> = HashMap::new();
                    for (_, lp, lq) in &common {
                        *classes.entry(*lq * lp.inverse()).or_insert(0) += 1;
                    }
                    let ordered: u64 = classes.values().map(|c| c * c).sum();
                    all += ordered;
                    if i != j {
                        proper += ordered - common.len() as u64;
                    }
                }
                (all, proper)
            })
            .collect();
        let (all, proper) = per_row
            .into_iter()
            .fold((0, 0), |(a, p), (x, y)| (a + x, p + y));
        SingularCounts { all, proper }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingularCounts {
    /// Every ordered singular square, degenerate ones included.
    pub all: u64,
    /// Ordered singular squares with `P ≠ Q` and `A ≠ B`.
    pub proper: u64,
}

/// All squares, ordered by `(P, Q, A, B)`.
pub fn enumerate_squares(n: usize, r: usize) -> Result<Vec<Square>> {
    Ok(SquareIndex::new(n, r)?.squares())
}

/// All singular squares (degenerate ones included), ordered by `(P, Q, A, B)`.
pub fn enumerate_singular_squares(n: usize, r: usize) -> Result<Vec<Square>> {
    Ok(SquareIndex::new(n, r)?.singular_squares())
}

/// The set `Σ` of proper singular squares feeding the presentation.
pub fn enumerate_proper_singular_squares(n: usize, r: usize) -> Result<Vec<Square>> {
    Ok(enumerate_singular_squares(n, r)?
        .into_iter()
        .filter(Square::is_proper)
        .collect())
}

/// Permutations labelling a corner of some singular square: over all
/// singular squares, and over proper ones only.
pub fn singular_square_labels(n: usize, r: usize) -> Result<(BTreeSet<Permutation>, BTreeSet<Permutation>)> {
    let mut any = BTreeSet::new();
    let mut proper = BTreeSet::new();
    for sq in enumerate_singular_squares(n, r)? {
        let l = sq.labels();
        let corners = [l.pa, l.pb, l.qa, l.qb];
        any.extend(corners);
        if sq.is_proper() {
            proper.extend(corners);
        }
    }
    Ok((any, proper))
}

/// `G(π)`: transversal pairs labelled `π`, joined when they share a row or
/// a column.
#[derive(Clone, Debug)]
pub struct LabelGraph {
    pub vertices: Vec<(Partition, Subset)>,
    pub graph: UnGraph<(), ()>,
}

pub fn label_graph(pi: &Permutation, n: usize, r: usize) -> Result<LabelGraph> {
    if pi.degree() != r {
        return Err(invalid(format!("{pi} has degree {} not {r}", pi.degree())));
    }
    let mut vertices = Vec::new();
    for p in enumerate_partitions(n, r)? {
        for a in transversals(&p) {
            if label_unchecked(&p, &a) == *pi {
                vertices.push((p, a));
            }
        }
    }
    let mut graph = UnGraph::<(), ()>::with_capacity(vertices.len(), 0);
    let nodes: Vec<_> = vertices.iter().map(|_| graph.add_node(())).collect();
    let mut by_row: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
    let mut by_col: BTreeMap<Subset, Vec<usize>> = BTreeMap::new();
    for (i, (p, a)) in vertices.iter().enumerate() {
        by_row.entry(*p).or_default().push(i);
        by_col.entry(*a).or_default().push(i);
    }
    for group in by_row.values().chain(by_col.values()) {
        for (s, &i) in group.iter().enumerate() {
            for &j in &group[s + 1..] {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    Ok(LabelGraph { vertices, graph })
}

impl LabelGraph {
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Connected components as sorted vertex index lists, ordered by their
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for e in self.graph.edge_indices() {
            let (x, y) = self.graph.edge_endpoints(e).expect("edge");
            uf.union(x.index(), y.index());
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.vertices.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// JSON record of one square.
#[derive(Clone, Debug, Serialize)]
pub struct SquareRecord {
    #[serde(flatten)]
    pub square: Square,
    pub labels: SquareLabels,
    pub singular: bool,
    pub evidence_kind: EvidenceKind,
}

impl SquareRecord {
    pub fn new(sq: &Square) -> SquareRecord {
        let singular = sq2_unchecked(sq);
        SquareRecord {
            square: *sq,
            labels: sq.labels(),
            singular,
            evidence_kind: if singular {
                EvidenceKind::Lr
            } else {
                EvidenceKind::None
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(p: &str, q: &str, a: &[u8], b: &[u8]) -> Square {
        let p: Partition = p.parse().unwrap();
        let q: Partition = q.parse().unwrap();
        let n = p.n();
        Square::new(p, q, Subset::new(n, a).unwrap(), Subset::new(n, b).unwrap()).unwrap()
    }

    #[test]
    fn running_squares() {
        let s = sq("{{1},{2,3,5},{4,7},{6}}", "{{1},{2,3,6},{4,7},{5}}", &[1, 4, 5, 6], &[1, 5, 6, 7]);
        assert!(is_singular_sq2(&s).unwrap());
        assert!(is_singular_sq3(&s).unwrap());
        let ev = find_singularizing_idempotent(&s).unwrap();
        assert_eq!(ev.kind, EvidenceKind::Lr);
        assert!(verify_lr_witness(&s, &ev.witness.unwrap()));
        let t = sq("{{1},{2,4},{3,6},{5,7}}", "{{1},{2,6,7},{3,5},{4}}", &[1, 3, 4, 7], &[1, 4, 5, 6]);
        assert!(!is_singular_sq2(&t).unwrap());
        assert!(!is_singular_sq3(&t).unwrap());
        assert_eq!(find_singularizing_idempotent(&t).unwrap().kind, EvidenceKind::None);
    }

    #[test]
    fn degenerate_square() {
        let s = sq("{{1,3},{2}}", "{{1,3},{2}}", &[2, 3], &[2, 3]);
        assert!(is_singular_sq2(&s).unwrap());
        assert!(is_rectangular_band(&s).unwrap());
        assert!(!s.is_proper());
    }

    #[test]
    fn not_a_square() {
        let p: Partition = "{{1,3},{2}}".parse().unwrap();
        let q: Partition = "{{1},{2,3}}".parse().unwrap();
        let a = Subset::new(3, &[1, 2]).unwrap();
        let b = Subset::new(3, &[2, 3]).unwrap();
        assert!(matches!(Square::new(p, q, a, b), Err(Error::NotASquare(_))));
    }

    #[test]
    fn counts_agree() {
        let idx = SquareIndex::new(5, 3).unwrap();
        let counts = idx.count_singular();
        let listed = idx.singular_squares();
        assert_eq!(counts.all as usize, listed.len());
        assert_eq!(counts.proper as usize, listed.iter().filter(|s| s.is_proper()).count());
        assert_eq!(counts, SingularCounts { all: 1410, proper: 360 });
    }

    #[test]
    fn json_record() {
        let s = sq("{{1,3},{2}}", "{{1},{2,3}}", &[1, 2], &[1, 2]);
        let v = serde_json::to_value(SquareRecord::new(&s)).unwrap();
        assert_eq!(v["P"], serde_json::json!([[1, 3], [2]]));
        assert_eq!(v["evidence_kind"], "LR");
        let back: Square = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
