//! Chains of flush squares joining equally labelled generators in one row or
//! one column.

use serde::Serialize;

use crate::combinatorics::{require_transversal, Partition, Subset};
use crate::error::{invalid, precondition, Result};
use crate::label::label_unchecked;
use crate::square::Square;

use super::construct::canonical_cycle_pair;

/// A flush square joining two generators with equal labels; the other two
/// corners have identity labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Link {
    /// Square `(P,Q,B,A)` joining `(P,A)` and `(Q,A)`; `B ⊥ P, Q` with
    /// identity labels.
    Column {
        #[serde(rename = "P")]
        p: Partition,
        #[serde(rename = "Q")]
        q: Partition,
        #[serde(rename = "B")]
        b: Subset,
        #[serde(rename = "A")]
        a: Subset,
    },
    /// Square `(P,Q,A,B)` joining `(P,A)` and `(P,B)`; `λ(Q,A) = λ(Q,B) = ()`.
    Row {
        #[serde(rename = "P")]
        p: Partition,
        #[serde(rename = "Q")]
        q: Partition,
        #[serde(rename = "A")]
        a: Subset,
        #[serde(rename = "B")]
        b: Subset,
    },
}

impl Link {
    pub fn square(&self) -> Square {
        match *self {
            Link::Column { p, q, b, a } => Square::new_unchecked(p, q, b, a),
            Link::Row { p, q, a, b } => Square::new_unchecked(p, q, a, b),
        }
    }

    /// The two joined pairs.
    pub fn ends(&self) -> [(Partition, Subset); 2] {
        match *self {
            Link::Column { p, q, a, .. } => [(p, a), (q, a)],
            Link::Row { p, a, b, .. } => [(p, a), (p, b)],
        }
    }

    /// The two identity-labelled corners.
    pub fn helpers(&self) -> [(Partition, Subset); 2] {
        match *self {
            Link::Column { p, q, b, .. } => [(p, b), (q, b)],
            Link::Row { q, a, b, .. } => [(q, a), (q, b)],
        }
    }
}

fn move_point(p: &Partition, x: u8, block0: usize) -> Result<Partition> {
    p.with_moved(x, block0 + 1)
}

fn chain_columns(p: &Partition, q: &Partition, a: &Subset, out: &mut Vec<Link>) -> Result<()> {
    if p == q {
        return Ok(());
    }
    let (pm, qm) = (p.minima(), q.minima());
    let n = p.n();
    let Some(u) = (0..pm.len()).find(|&i| pm[i] != qm[i]) else {
        out.push(Link::Column { p: *p, q: *q, b: Subset::new(n, &pm)?, a: *a });
        return Ok(());
    };
    if pm[u] < qm[u] {
        let rr = move_point(q, pm[u], u)?;
        chain_columns(p, &rr, a, out)?;
        out.push(Link::Column { p: *q, q: rr, b: Subset::new(n, &qm)?, a: *a });
    } else {
        let rr = move_point(p, qm[u], u)?;
        out.push(Link::Column { p: *p, q: rr, b: Subset::new(n, &pm)?, a: *a });
        chain_columns(&rr, q, a, out)?;
    }
    Ok(())
}

/// Links joining `(P,A)` to `(Q,A)` when both labels agree, moving one
/// minimum at a time.
pub fn same_column_links(p: &Partition, q: &Partition, a: &Subset) -> Result<Vec<Link>> {
    require_transversal(a, p)?;
    require_transversal(a, q)?;
    if label_unchecked(p, a) != label_unchecked(q, a) {
        return Err(precondition(format!("{a} has different labels in {p} and {q}")));
    }
    let mut out = Vec::new();
    chain_columns(p, q, a, &mut out)?;
    if let Some(l) = out.iter().find(|l| !l.square().is_proper()) {
        return Err(precondition(format!("column square {:?} is degenerate", l.square())));
    }
    Ok(out)
}

fn row_link(p: &Partition, a: &Subset, b: &Subset) -> Result<Option<Link>> {
    if a == b {
        return Ok(None);
    }
    let (n, r) = (p.n(), p.r());
    let mut blocks: Vec<Vec<u8>> = vec![Vec::new(); r];
    for i in 2..=r {
        let (x, y) = (a.nth(i), b.nth(i));
        blocks[i - 1] = if x == y { vec![x] } else { vec![x.min(y), x.max(y)] };
    }
    let used: Vec<u8> = blocks.iter().flatten().copied().collect();
    blocks[0] = (1..=n as u8).filter(|x| !used.contains(x)).collect();
    let q = Partition::from_blocks(n, &blocks)?;
    if q.r() != r {
        return Err(invalid("row link partition lost a block"));
    }
    if q == *p {
        return Err(precondition(format!("the row square through {p} is degenerate")));
    }
    Ok(Some(Link::Row { p: *p, q, a: *a, b: *b }))
}

/// The single link joining `(P,A)` and `(P,B)` when both labels agree.
pub fn same_row_links(p: &Partition, a: &Subset, b: &Subset) -> Result<Vec<Link>> {
    require_transversal(a, p)?;
    require_transversal(b, p)?;
    if label_unchecked(p, a) != label_unchecked(p, b) {
        return Err(precondition(format!("{a} and {b} have different labels in {p}")));
    }
    Ok(row_link(p, a, b)?.into_iter().collect())
}

/// Links joining a pair labelled `ξ_{k,l}` to the canonical pair of that
/// label.
pub fn cycle_equal_links(p: &Partition, a: &Subset) -> Result<Vec<Link>> {
    require_transversal(a, p)?;
    let lam = label_unchecked(p, a);
    let (k, l) = lam
        .classify_descent_one()
        .ok_or_else(|| precondition(format!("label {lam} is not a contiguous cycle")))?;
    let mut out = Vec::new();
    cycle_equal(p, a, k, l, &mut out)?;
    Ok(out)
}

fn cycle_equal(p: &Partition, a: &Subset, k: usize, l: usize, out: &mut Vec<Link>) -> Result<()> {
    let (n, r) = (p.n(), p.r());
    let (pmin, amin) = canonical_cycle_pair(k, l, n, r)?;
    if *a == amin {
        chain_columns(p, &pmin, a, out)?;
        return Ok(());
    }
    let av = a.elements();
    let pm = p.minima();
    let ai = |i: usize| av[i - 1];
    let t = (1..k)
        .find(|&i| ai(i) as usize > i)
        .or_else(|| (k..=r).find(|&i| ai(i) as usize > i + 1))
        .ok_or_else(|| invalid("no index separates the pair from the canonical one"))?;
    if let Some(i) = (1..k).find(|&i| ai(i) != pm[i - 1]) {
        let a2 = a.replace(ai(i), pm[i - 1])?;
        out.extend(row_link(p, a, &a2)?);
        return cycle_equal(p, &a2, k, l, out);
    }
    let mut blocks: Vec<Vec<u8>> = vec![Vec::new(); r];
    for i in 2..k {
        blocks[i - 1] = vec![ai(i)];
    }
    if k != 1 {
        let (x, y) = (pm[k - 1], ai(k + l));
        blocks[k - 1] = vec![x.min(y), x.max(y)];
    }
    for i in k + 1..=k + l {
        blocks[i - 1] = vec![ai(i - 1)];
    }
    for i in k + l + 1..=r {
        blocks[i - 1] = vec![ai(i)];
    }
    let used: Vec<u8> = blocks[1..].iter().flatten().copied().collect();
    let rest: Vec<u8> = (1..=n as u8).filter(|x| !used.contains(x) && !blocks[0].contains(x)).collect();
    blocks[0].extend(rest);
    let nonempty: Vec<Vec<u8>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    let q = Partition::from_blocks(n, &nonempty)?;
    let x = ai(t) - 1;
    if x != pm[k - 1] {
        let q2 = move_point(&q, x, q.block_of(ai(t)) - 1)?;
        let a2 = a.replace(ai(t), x)?;
        chain_columns(p, &q2, a, out)?;
        out.extend(row_link(&q2, a, &a2)?);
        cycle_equal(&q2, &a2, k, l, out)
    } else {
        let mut bl = q.blocks();
        bl[0].retain(|&y| y != k as u8);
        bl[k - 1] = vec![k as u8, ai(k + l)];
        bl[k] = vec![ai(k) - 1, ai(k)];
        let q3 = Partition::from_blocks(n, &bl)?;
        let a3 = a.replace(ai(k), ai(k) - 1)?;
        chain_columns(p, &q3, a, out)?;
        out.extend(row_link(&q3, &a3, a)?);
        cycle_equal(&q3, &a3, k, l, out)
    }
}

/// Which branch of the cycle identification a pair takes first: `None` when
/// it is already in the canonical column or a row move applies, otherwise
/// whether `a_t - 1` is the minimum `p_k`.
pub fn cycle_equal_branch(p: &Partition, a: &Subset) -> Option<bool> {
    let lam = label_unchecked(p, a);
    let (k, l) = lam.classify_descent_one()?;
    let (_, amin) = canonical_cycle_pair(k, l, p.n(), p.r()).ok()?;
    let av = a.elements();
    let pm = p.minima();
    if *a == amin || (1..k).any(|i| av[i - 1] != pm[i - 1]) {
        return None;
    }
    let t = (1..k)
        .find(|&i| av[i - 1] as usize > i)
        .or_else(|| (k..=p.r()).find(|&i| av[i - 1] as usize > i + 1))?;
    Some(av[t - 1] - 1 == pm[k - 1])
}
