//! Independent checks of the group order: the label homomorphism onto `S_r`
//! and coset enumeration over the trivial subgroup.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{invalid, precondition, Result};
use crate::permutation::Permutation;
use crate::pipeline::{replay, run_pipeline};
use crate::presentation::word::generator_of;
use crate::presentation::{
    build_presentation, coxeter_presentation, cyclic_reduce, generic_tietze_simplify, GroupPresentation, Provenance,
    Symbol, TietzeLimits,
};
use crate::square::SquareIndex;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: u32 = u32::MAX;

/// A coset table under construction, with coincidence handling.
pub struct CosetTable {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "result", content = "order")]
pub enum CosetOutcome {
    Order(u64),
    Inconclusive,
}

impl CosetOutcome {
    pub fn order(self) -> Option<u64> {
        match self {
            CosetOutcome::Order(k) => Some(k),
            CosetOutcome::Inconclusive => None,
        }
    }
}

struct Exhausted;

impl CosetTable {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * generators;
        CosetTable {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
            max_cosets,
        }
    }

    pub fn live_cosets(&self) -> usize {
        self.live
    }

    /// Number of cosets ever defined.
    pub fn defined(&self) -> usize {
        self.table.len()
    }

    fn col(l: i32) -> usize {
        2 * generator_of(l) + usize::from(l < 0)
    }

    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> std::result::Result<u32, Exhausted> {
        if self.table.len() >= self.max_cosets {
            return Err(Exhausted);
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c as usize][x] = d;
        self.table[d as usize][Self::inv(x)] = c;
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut VecDeque<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi as usize] = lo;
        self.live -= 1;
        queue.push_back(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[e as usize][x];
                if d == NONE {
                    continue;
                }
                if self.table[d as usize][Self::inv(x)] == e {
                    self.table[d as usize][Self::inv(x)] = NONE;
                }
                let (mu, nu) = (self.rep(e), self.rep(d));
                let mx = self.table[mu as usize][x];
                if mx != NONE {
                    self.merge(nu, mx, &mut queue);
                } else {
                    let ny = self.table[nu as usize][Self::inv(x)];
                    if ny != NONE {
                        self.merge(mu, ny, &mut queue);
                    } else {
                        self.table[mu as usize][x] = nu;
                        self.table[nu as usize][Self::inv(x)] = mu;
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> std::result::Result<(), Exhausted> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b as usize][Self::inv(w[j as usize])] != NONE {
                b = self.table[b as usize][Self::inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][Self::inv(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Order of the presented group by relator-scanning coset enumeration over
/// the trivial subgroup, or inconclusive once `max_cosets` cosets have been
/// defined.
pub fn coset_enumerate(pres: &GroupPresentation, max_cosets: usize) -> CosetOutcome {
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|w| cyclic_reduce(w).into_iter().map(CosetTable::col).collect())
        .collect();
    let mut t = CosetTable::new(pres.generators.len(), max_cosets.max(1));
    let mut c = 0u32;
    let run = |t: &mut CosetTable, c: &mut u32| -> std::result::Result<(), Exhausted> {
        while (*c as usize) < t.table.len() {
            if t.alive(*c) {
                for w in &relators {
                    t.scan_and_fill(*c, w)?;
                    if !t.alive(*c) {
                        break;
                    }
                }
                for x in 0..t.cols {
                    if t.alive(*c) && t.table[*c as usize][x] == NONE {
                        t.define(*c, x)?;
                    }
                }
            }
            *c += 1;
        }
        Ok(())
    };
    match run(&mut t, &mut c) {
        Ok(()) => CosetOutcome::Order(t.live_cosets() as u64),
        Err(Exhausted) => CosetOutcome::Inconclusive,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub family: Provenance,
    pub relations: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub families: Vec<FamilyCheck>,
    /// Every adjacent transposition occurs as a label.
    pub coxeter_transpositions_present: bool,
    /// Order of the group generated by the labels.
    pub image_order: u64,
    pub passed: bool,
}

pub fn factorial(r: usize) -> u64 {
    (1..=r as u64).product()
}

/// Order of the subgroup of `S_r` generated by the given permutations.
fn generated_order(gens: &[Permutation], r: usize) -> u64 {
    let mut seen: HashSet<Permutation> = HashSet::from([Permutation::identity(r)]);
    let mut queue: VecDeque<Permutation> = seen.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x * *g;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u64
}

/// Send every `f_{P,A}` to its label and check each relation in `S_r`.
pub fn label_homomorphism_check(pres: &GroupPresentation) -> Result<HomomorphismReport> {
    let mut images = Vec::with_capacity(pres.generators.len());
    for s in &pres.generators {
        match s {
            Symbol::F(id) => images.push(id.label),
            Symbol::G { g } => return Err(precondition(format!("generator g{g} carries no label"))),
        }
    }
    let Some(r) = images.first().map(Permutation::degree) else {
        return Err(precondition("presentation has no generators"));
    };
    let mut fam: BTreeMap<Provenance, (usize, usize)> = BTreeMap::new();
    for rel in &pres.relations {
        let mut acc = Permutation::identity(r);
        for &l in &rel.relator() {
            let g = images[generator_of(l)];
            acc = acc * if l > 0 { g } else { g.inverse() };
        }
        let e = fam.entry(rel.tag).or_default();
        e.0 += 1;
        e.1 += usize::from(!acc.is_identity());
    }
    let distinct: HashSet<Permutation> = images.iter().copied().collect();
    let present = (1..r).all(|k| {
        let t = Permutation::transposition(k as u8, k as u8 + 1, r).expect("k < r");
        distinct.contains(&t)
    });
    let image_order = if present {
        factorial(r)
    } else {
        let gens: Vec<Permutation> = distinct.into_iter().collect();
        generated_order(&gens, r)
    };
    let families: Vec<FamilyCheck> = fam
        .into_iter()
        .map(|(family, (relations, failures))| FamilyCheck {
            family,
            relations,
            failures,
        })
        .collect();
    let passed = families.iter().all(|f| f.failures == 0);
    Ok(HomomorphismReport {
        families,
        coxeter_transpositions_present: present,
        image_order,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyBudget {
    pub coset_oracle: bool,
    pub max_cosets: usize,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            coset_oracle: false,
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pipeline: bool,
    pub homomorphism: bool,
    pub coset_order: Option<u64>,
    pub verdict: String,
}

impl Verdict {
    pub fn confirmed(&self) -> bool {
        self.verdict.starts_with("confirmed")
    }
}

/// Combine the derivation (order at most `r!`), the label homomorphism (order
/// at least `r!`) and optionally coset enumeration.
pub fn verify_theorem(n: usize, r: usize, budget: VerifyBudget) -> Result<Verdict> {
    if r == 0 || r >= n || n > crate::combinatorics::MAX_N {
        return Err(invalid(format!("need 1 ≤ r < n, got n = {n}, r = {r}")));
    }
    if r + 1 == n {
        let singular = SquareIndex::new(n, r)?.count_singular().proper;
        let (pres, _) = build_presentation(n, r)?;
        let hom = label_homomorphism_check(&pres)?;
        let simple = generic_tietze_simplify(&pres, TietzeLimits::default());
        return Ok(Verdict {
            pipeline: false,
            homomorphism: hom.passed,
            coset_order: None,
            verdict: format!(
                "out of scope: free regime, {singular} proper singular squares, {} generators and {} relations after simplification",
                simple.generators.len(),
                simple.relations.len()
            ),
        });
    }
    let (snapshot, log) = run_pipeline(n, r)?;
    let pipeline = replay(&log).is_ok() && snapshot == coxeter_presentation(r);
    let (pres, _) = build_presentation(n, r)?;
    let hom = label_homomorphism_check(&pres)?;
    let homomorphism = hom.passed && hom.image_order == factorial(r);
    let coset_order = if budget.coset_oracle {
        let simple = generic_tietze_simplify(&pres, TietzeLimits::default());
        coset_enumerate(&simple, budget.max_cosets).order()
    } else {
        None
    };
    let verdict = match coset_order {
        Some(k) if k != factorial(r) => format!("inconsistent: coset enumeration gives order {k}"),
        _ if pipeline && homomorphism => format!("confirmed S_{r}"),
        _ => "not confirmed".to_string(),
    };
    Ok(Verdict {
        pipeline,
        homomorphism,
        coset_order,
        verdict,
    })
}
