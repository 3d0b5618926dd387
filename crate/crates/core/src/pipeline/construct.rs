//! Explicit transversal pairs and singular squares used by the derivation.

use crate::combinatorics::{Partition, Subset};
use crate::error::{invalid, precondition, Result};
use crate::label::label_unchecked;
use crate::permutation::{contiguous_cycle, Permutation};
use crate::square::{is_singular_sq2, Square};

fn span(a: usize, b: usize) -> impl Iterator<Item = u8> {
    (a..=b).map(|x| x as u8)
}

/// Build a partition from blocks indexed `1..=r`; block 1 receives every
/// point not placed elsewhere. Empty blocks are dropped, then the rank is
/// checked.
fn assemble(n: usize, r: usize, mut blocks: Vec<Vec<u8>>) -> Result<Partition> {
    let used: Vec<u8> = blocks[2..].iter().flatten().copied().collect();
    let first = &mut blocks[1];
    for x in 1..=n as u8 {
        if !used.contains(&x) && !first.contains(&x) {
            first.push(x);
        }
    }
    let nonempty: Vec<Vec<u8>> = blocks.into_iter().skip(1).filter(|b| !b.is_empty()).collect();
    let p = Partition::from_blocks(n, &nonempty)?;
    if p.r() != r {
        return Err(invalid(format!("construction produced {} blocks instead of {r}", p.r())));
    }
    Ok(p)
}

fn subset_without(n: usize, upto: usize, drop: &[usize]) -> Result<Subset> {
    let els: Vec<u8> = span(1, upto).filter(|&x| !drop.contains(&(x as usize))).collect();
    Subset::new(n, &els)
}

fn check_range(n: usize, r: usize, k: usize, top: usize) -> Result<()> {
    if r + 2 > n {
        return Err(precondition(format!("need r ≤ n-2, got n = {n}, r = {r}")));
    }
    if k == 0 || top > r {
        return Err(precondition(format!("index {k} out of range for r = {r}")));
    }
    Ok(())
}

fn expect(sq: &Square, labels: [&Permutation; 4]) -> Result<()> {
    let got = sq.labels();
    if [&got.pa, &got.pb, &got.qa, &got.qb] != labels || !is_singular_sq2(sq)? {
        return Err(invalid(format!("construction check failed for {sq}")));
    }
    Ok(())
}

fn transposition(k: usize, r: usize) -> Permutation {
    Permutation::transposition(k as u8, k as u8 + 1, r).expect("k < r")
}

/// The lexicographically least pair labelled `ξ_{k,l}`.
pub fn canonical_cycle_pair(k: usize, l: usize, n: usize, r: usize) -> Result<(Partition, Subset)> {
    if l == 0 {
        return Err(precondition("l must be positive"));
    }
    check_range(n, r, k, k + l)?;
    let a = subset_without(n, r + 1, &[k])?;
    let mut b = vec![Vec::new(); r + 1];
    for i in 2..k {
        b[i] = vec![i as u8];
    }
    if k == 1 {
        b[1] = [1, l as u8 + 2].into_iter().chain(span(r + 2, n)).collect();
    } else {
        b[k] = vec![k as u8, (k + l + 1) as u8];
    }
    for i in k + 1..=k + l {
        b[i] = vec![i as u8];
    }
    for i in k + l + 1..=r {
        b[i] = vec![i as u8 + 1];
    }
    let p = assemble(n, r, b)?;
    if label_unchecked(&p, &a) != contiguous_cycle(k, l, r)? {
        return Err(invalid("canonical pair has the wrong label"));
    }
    Ok((p, a))
}

/// The square splitting `ξ_{k,l}`, `l ≥ 2`, into `(k k+1)` and
/// `ξ_{k+1,l-1}`. Labels: `PA = ()`, `PB = ξ_{k+1,l-1}`, `QA = (k k+1)`,
/// `QB = ξ_{k,l}`, so `f_{Q,B} = f_{Q,A} f_{P,B}`.
pub fn cycle_split(k: usize, l: usize, n: usize, r: usize) -> Result<Square> {
    if l < 2 {
        return Err(precondition("splitting needs l ≥ 2"));
    }
    check_range(n, r, k, k + l)?;
    let a = subset_without(n, r + 2, &[k, k + l + 2])?;
    let bb = subset_without(n, r + 2, &[k, k + 2])?;
    let mut p = vec![Vec::new(); r + 1];
    let mut q = vec![Vec::new(); r + 1];
    if k != 1 {
        p[k] = vec![k as u8, k as u8 + 1];
        q[k] = vec![k as u8, k as u8 + 2, (k + l + 2) as u8];
    } else {
        p[1] = vec![1, 2];
        q[1] = vec![1, 3, l as u8 + 3];
    }
    for i in 2..k {
        p[i] = vec![i as u8];
        q[i] = vec![i as u8];
    }
    p[k + 1] = vec![k as u8 + 2, (k + l + 2) as u8];
    q[k + 1] = vec![k as u8 + 1];
    for i in (k + 2..=k + l).chain(k + l + 1..=r) {
        let x = if i <= k + l { i + 1 } else { i + 2 };
        p[i] = vec![x as u8];
        q[i] = vec![x as u8];
    }
    let sq = Square::new(assemble(n, r, p)?, assemble(n, r, q)?, a, bb)?;
    let id = Permutation::identity(r);
    expect(
        &sq,
        [&id, &contiguous_cycle(k + 1, l - 1, r)?, &transposition(k, r), &contiguous_cycle(k, l, r)?],
    )?;
    Ok(sq)
}

/// Labels `PA = QB = (k k+1)`, `PB = QA = ()`.
pub fn coxeter_square_involution(k: usize, n: usize, r: usize) -> Result<Square> {
    check_range(n, r, k, k + 1)?;
    let a = subset_without(n, r + 2, &[k, k + 3])?;
    let b = subset_without(n, r + 2, &[k, k + 1])?;
    let mut p = vec![Vec::new(); r + 1];
    let mut q = vec![Vec::new(); r + 1];
    if k != 1 {
        p[k] = vec![k as u8, k as u8 + 2];
        q[1] = vec![k as u8];
        q[k] = vec![k as u8 + 1, k as u8 + 3];
    } else {
        p[1] = vec![1, 3];
        q[1] = vec![1, 2, 4];
    }
    for i in 2..k {
        p[i] = vec![i as u8];
        q[i] = vec![i as u8];
    }
    p[k + 1] = vec![k as u8 + 1, k as u8 + 3];
    q[k + 1] = vec![k as u8 + 2];
    for i in k + 2..=r {
        p[i] = vec![i as u8 + 2];
        q[i] = vec![i as u8 + 2];
    }
    let sq = Square::new(assemble(n, r, p)?, assemble(n, r, q)?, a, b)?;
    let t = transposition(k, r);
    let id = Permutation::identity(r);
    expect(&sq, [&t, &id, &id, &t])?;
    Ok(sq)
}

/// Two squares `(P,Q,A,B)` and `(Q,R,B,C)` sharing `f_{Q,B}`, whose label is
/// `(k k+1)(l l+1)`.
pub fn coxeter_square_commute(k: usize, l: usize, n: usize, r: usize) -> Result<(Square, Square)> {
    if k + 1 >= l {
        return Err(precondition(format!("commutation needs k+1 < l, got k = {k}, l = {l}")));
    }
    check_range(n, r, k, l + 1)?;
    let a = subset_without(n, r + 2, &[k + 2, l + 1])?;
    let b = subset_without(n, r + 2, &[k, l + 1])?;
    let c = subset_without(n, r + 2, &[k, l + 3])?;
    let mut p = vec![Vec::new(); r + 1];
    let mut q = vec![Vec::new(); r + 1];
    let mut rr = vec![Vec::new(); r + 1];
    let (k8, l8) = (k as u8, l as u8);
    if k != 1 {
        p[1] = vec![l8 + 1];
        p[k] = vec![k8, k8 + 2];
        q[k] = vec![k8, k8 + 2];
        rr[1] = vec![k8];
        for i in k..l {
            rr[i] = vec![i as u8 + 1];
        }
    } else {
        p[1] = vec![1, 3, l8 + 1];
        q[1] = vec![1, 3];
        rr[1] = vec![1, 2];
        for i in k + 1..l {
            rr[i] = vec![i as u8 + 1];
        }
    }
    for i in 2..k {
        p[i] = vec![i as u8];
        q[i] = vec![i as u8];
        rr[i] = vec![i as u8];
    }
    p[k + 1] = vec![k8 + 1];
    q[k + 1] = vec![k8 + 1];
    for i in k + 2..l {
        p[i] = vec![i as u8 + 1];
        q[i] = vec![i as u8 + 1];
    }
    for i in l..=r {
        p[i] = vec![i as u8 + 2];
    }
    for x in [&mut q, &mut rr] {
        x[l] = vec![l8 + 1, l8 + 3];
        x[l + 1] = vec![l8 + 2];
        for i in l + 2..=r {
            x[i] = vec![i as u8 + 2];
        }
    }
    let (p, q, rr) = (assemble(n, r, p)?, assemble(n, r, q)?, assemble(n, r, rr)?);
    let first = Square::new(p, q, a, b)?;
    let second = Square::new(q, rr, b, c)?;
    let id = Permutation::identity(r);
    let (tk, tl) = (transposition(k, r), transposition(l, r));
    let both = tk * tl;
    expect(&first, [&id, &tk, &tl, &both])?;
    expect(&second, [&both, &tk, &tl, &id])?;
    Ok((first, second))
}

/// Labels `()`, `ξ_{k,2}`, `(k+1 k+2)`, `(k k+2)`.
pub fn coxeter_square_braid(k: usize, n: usize, r: usize) -> Result<Square> {
    check_range(n, r, k, k + 2)?;
    let a = subset_without(n, r + 2, &[k + 1, k + 4])?;
    let b = subset_without(n, r + 2, &[k, k + 1])?;
    let mut p = vec![Vec::new(); r + 1];
    let mut q = vec![Vec::new(); r + 1];
    let k8 = k as u8;
    if k != 1 {
        p[k] = vec![k8, k8 + 1, k8 + 4];
        q[k] = vec![k8, k8 + 4];
    } else {
        p[1] = vec![1, 2, 5];
        q[1] = vec![1, 5];
    }
    for i in 2..k {
        p[i] = vec![i as u8];
        q[i] = vec![i as u8];
    }
    p[k + 1] = vec![k8 + 2];
    p[k + 2] = vec![k8 + 3];
    q[k + 1] = vec![k8 + 1, k8 + 3];
    q[k + 2] = vec![k8 + 2];
    for i in k + 3..=r {
        p[i] = vec![i as u8 + 2];
        q[i] = vec![i as u8 + 2];
    }
    let sq = Square::new(assemble(n, r, p)?, assemble(n, r, q)?, a, b)?;
    let id = Permutation::identity(r);
    let cross = Permutation::transposition(k8, k8 + 2, r)?;
    expect(&sq, [&id, &contiguous_cycle(k, 2, r)?, &transposition(k + 1, r), &cross])?;
    Ok(sq)
}

/// A second square through the corner `(Q,B)` of the braid square:
/// `(X,Q,B,Y)` with labels `(k k+1)`, `()`, `(k k+2)`, `ξ_{k,2}`.
pub fn coxeter_square_braid_partner(k: usize, n: usize, r: usize) -> Result<Square> {
    let base = coxeter_square_braid(k, n, r)?;
    let y = subset_without(n, r + 2, &[k, k + 3])?;
    let mut x = vec![Vec::new(); r + 1];
    let k8 = k as u8;
    if k != 1 {
        x[k] = vec![k8, k8 + 1, k8 + 3];
    } else {
        x[1] = vec![1, 2, 4];
    }
    for i in 2..k {
        x[i] = vec![i as u8];
    }
    x[k + 1] = vec![k8 + 2];
    x[k + 2] = vec![k8 + 4];
    for i in k + 3..=r {
        x[i] = vec![i as u8 + 2];
    }
    let sq = Square::new(assemble(n, r, x)?, base.q, base.b, y)?;
    let id = Permutation::identity(r);
    let cross = Permutation::transposition(k8, k8 + 2, r)?;
    expect(&sq, [&transposition(k, r), &id, &cross, &contiguous_cycle(k, 2, r)?])?;
    Ok(sq)
}

/// The reduction of a pair whose label has at least two descents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReduction {
    /// `(P,Q,A,B)` with `λ(Q,B) = ()`, so `f_{P,A} = f_{P,B} f_{Q,A}`.
    pub square: Square,
    /// `λ(P,B)`, a contiguous cycle.
    pub cycle: Permutation,
    /// `λ(Q,A)`, with one descent fewer than `λ(P,A)`.
    pub rest: Permutation,
}

pub fn descent_reduction(p: &Partition, a: &Subset) -> Result<DescentReduction> {
    crate::combinatorics::require_transversal(a, p)?;
    let lam = label_unchecked(p, a);
    if lam.descent_number() < 2 {
        return Err(precondition(format!("label {lam} has fewer than two descents")));
    }
    let (n, r) = (p.n(), p.r());
    let (loc, cycle, rest) = lam.split_rightmost_descent().expect("has a descent");
    let (v, w) = (loc.v, loc.w);
    let ai = |j: u8| a.nth(j as usize);
    let li = |i: usize| lam.apply(i as u8);
    let minima = p.minima();
    let mut b: Vec<u8> = minima[..v - 1].to_vec();
    b.extend((v + 1..=v + w).map(|i| ai(li(i))));
    b.push(ai(li(v)));
    b.extend((v + w + 1..=r).map(|i| ai(li(i))));
    let mut blocks = vec![Vec::new(); r + 1];
    for (i, blk) in blocks.iter_mut().enumerate().take(v).skip(2) {
        *blk = p.block(i);
    }
    for i in v..v + w {
        blocks[i] = vec![ai(li(i + 1))];
    }
    blocks[v + w] = vec![ai(li(v))];
    for i in v + w + 1..=r {
        blocks[i] = vec![ai(li(i))];
    }
    let q = assemble(n, r, blocks)?;
    let sq = Square::new(*p, q, *a, Subset::new(n, &b)?)?;
    expect(&sq, [&lam, &cycle, &rest, &Permutation::identity(r)])?;
    Ok(DescentReduction { square: sq, cycle, rest })
}

