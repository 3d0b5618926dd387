//! Words in a free group on numbered generators.
//!
//! A letter is a nonzero `i32`: `+k` is generator `k - 1`, `-k` its inverse.

/// A word as a list of signed, 1-based generator numbers.
pub type Word = Vec<i32>;

pub fn letter(generator: usize, exponent: i8) -> i32 {
    let k = generator as i32 + 1;
    if exponent < 0 {
        -k
    } else {
        k
    }
}

/// The 0-based generator of a letter.
pub fn generator_of(l: i32) -> usize {
    l.unsigned_abs() as usize - 1
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Cancel adjacent inverse pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Freely reduce, then cancel inverse pairs across the ends.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let w = free_reduce(w);
    let mut s = 0;
    let mut e = w.len();
    while e - s >= 2 && w[s] == -w[e - 1] {
        s += 1;
        e -= 1;
    }
    w[s..e].to_vec()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        out.extend_from_slice(p);
    }
    free_reduce(&out)
}

/// Replace every occurrence of generator `g` by `replacement`.
pub fn substitute(w: &[i32], g: usize, replacement: &[i32]) -> Word {
    let inv = inverse(replacement);
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if generator_of(l) == g {
            out.extend_from_slice(if l > 0 { replacement } else { &inv });
        } else {
            out.push(l);
        }
    }
    free_reduce(&out)
}

/// Apply a partial assignment of words to generators.
pub fn substitute_all(w: &[i32], values: &dyn Fn(usize) -> Option<Word>) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        match values(generator_of(l)) {
            Some(v) if l > 0 => out.extend_from_slice(&v),
            Some(v) => out.extend(inverse(&v)),
            None => out.push(l),
        }
    }
    free_reduce(&out)
}

pub fn occurrences(w: &[i32], g: usize) -> usize {
    w.iter().filter(|&&l| generator_of(l) == g).count()
}

/// If the relator `w` contains `g` exactly once, the word `g` equals.
///
/// For `w = X g^e Y` the relator is conjugate to `g^e Y X`, hence
/// `g = (Y X)^{-e}`.
pub fn solve_for(w: &[i32], g: usize) -> Option<Word> {
    if occurrences(w, g) != 1 {
        return None;
    }
    let pos = w.iter().position(|&l| generator_of(l) == g)?;
    let rest = concat(&[&w[pos + 1..], &w[..pos]]);
    Some(if w[pos] > 0 { inverse(&rest) } else { rest })
}

/// Representative of a relator up to cyclic rotation and inversion.
pub fn canonical_relator(w: &[i32]) -> Word {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return w;
    }
    let inv = inverse(&w);
    let mut best: Option<Word> = None;
    for base in [&w, &inv] {
        for s in 0..base.len() {
            let rot: Word = base[s..].iter().chain(&base[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| key(&rot) < key(b)) {
                best = Some(rot);
            }
        }
    }
    best.expect("nonempty")
}

fn key(w: &[i32]) -> Vec<(usize, i32)> {
    w.iter().map(|&l| (generator_of(l), -l.signum())).collect()
}
