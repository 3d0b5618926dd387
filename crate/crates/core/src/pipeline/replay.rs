//! Independent re-verification of a derivation log.
//!
//! The checker recomputes every conclusion from the cited relations by
//! substitution and solving in the free group; it never uses the claimed
//! values except to compare them with its own.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::combinatorics::{min_transversal, transversal_unchecked, Partition, Subset};
use crate::label::label_unchecked;
use crate::permutation::Permutation;
use crate::presentation::word::{self, canonical_relator, cyclic_reduce, free_reduce, generator_of, solve_for};
use crate::presentation::{build_presentation, coxeter_presentation, GeneratorId, Symbol, Word};
use crate::schreier::schreier_step;
use crate::square::{constructive_witness, is_singular_sq2, is_singular_sq3, verify_lr_witness, Square};

use super::{evaluate_word, Conclusion, DerivationLog, DerivationStep, Premise, Rule};

type Pair = (Partition, Subset);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayFailure {
    /// `None` for the final whole-log checks.
    pub step: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub steps_checked: usize,
    pub values: usize,
    pub relators: usize,
    pub failures: Vec<ReplayFailure>,
}

impl ReplayReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker {
    n: usize,
    r: usize,
    /// Conclusions of steps that passed.
    passed: Vec<Option<Conclusion>>,
    values: HashMap<Pair, Word>,
    defined: BTreeSet<usize>,
    relators: Vec<Word>,
}

/// Letters for unknown corners sit above every `g_k`.
const UNKNOWN: i32 = 1000;

impl Checker {
    fn new(n: usize, r: usize) -> Self {
        Checker {
            n,
            r,
            passed: Vec::new(),
            values: HashMap::new(),
            defined: BTreeSet::new(),
            relators: Vec::new(),
        }
    }

    fn check_square(&self, sq: &Square) -> Result<(), String> {
        if sq.p.n() != self.n || sq.p.r() != self.r || sq.q.r() != self.r {
            return Err(format!("square {sq} has the wrong size"));
        }
        for (p, a) in sq.corners() {
            if !transversal_unchecked(&a, &p) {
                return Err(format!("{a} is not a transversal of {p}"));
            }
        }
        if !sq.is_proper() {
            return Err(format!("square {sq} is degenerate and carries no relation"));
        }
        let s2 = is_singular_sq2(sq).map_err(|e| e.to_string())?;
        let s3 = is_singular_sq3(sq).map_err(|e| e.to_string())?;
        if !(s2 && s3 && verify_lr_witness(sq, &constructive_witness(sq))) {
            return Err(format!("square {sq} is not singular"));
        }
        Ok(())
    }

    fn check_pair(&self, p: &Partition, a: &Subset) -> Result<(), String> {
        if p.n() != self.n || p.r() != self.r || a.n() != self.n || !transversal_unchecked(a, p) {
            return Err(format!("f[{p}|{a}] is not a generator"));
        }
        Ok(())
    }

    fn check_word(&self, w: &[i32]) -> Result<(), String> {
        if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize >= self.r) {
            return Err("word mentions a letter outside g_1..g_{r-1}".into());
        }
        Ok(())
    }

    fn step(&mut self, index: usize, step: &DerivationStep) -> Result<Conclusion, String> {
        let mut facts: HashMap<Pair, Word> = HashMap::new();
        let mut squares: Vec<Square> = Vec::new();
        let mut tops: Vec<(Partition, Subset, Subset)> = Vec::new();
        let mut middles: Vec<Partition> = Vec::new();
        for prem in &step.premises {
            match prem {
                Premise::Step { index: j } => {
                    if *j >= index {
                        return Err(format!("premise step {j} does not precede"));
                    }
                    match &self.passed[*j] {
                        Some(Conclusion::Value { generator, value }) => {
                            facts.insert((generator.p, generator.a), value.clone());
                        }
                        Some(Conclusion::Relation { .. }) => return Err(format!("step {j} is not a value")),
                        None => return Err(format!("premise step {j} did not replay")),
                    }
                }
                Premise::Top { p, from, to } => {
                    self.check_pair(p, from)?;
                    self.check_pair(p, to)?;
                    if schreier_step(to) != Some((*from, *p)) {
                        return Err(format!("f[{p}|{from}] = f[{p}|{to}] is not a Schreier relation"));
                    }
                    tops.push((*p, *from, *to));
                }
                Premise::Middle { p } => {
                    if p.n() != self.n || p.r() != self.r {
                        return Err(format!("{p} has the wrong size"));
                    }
                    middles.push(*p);
                }
                Premise::Bottom { square } => {
                    self.check_square(square)?;
                    squares.push(*square);
                }
            }
        }
        if let Some(w) = &step.witness {
            if squares.first() != Some(&w.square) {
                return Err("witness square is not the cited square".into());
            }
            if w.labels != w.square.labels() {
                return Err("witness labels are wrong".into());
            }
        }
        let shape = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("not a {what} step")) };
        match (step.rule, &step.conclusion) {
            (Rule::Define, Conclusion::Value { generator, value }) => {
                self.check_pair(&generator.p, &generator.a)?;
                shape(step.premises.is_empty() && value.len() == 1 && value[0] > 0, "define")?;
                let k = value[0] as usize;
                let t = Permutation::transposition(k as u8, k as u8 + 1, self.r).map_err(|e| e.to_string())?;
                if label_unchecked(&generator.p, &generator.a) != t {
                    return Err(format!("{generator} is not labelled (k k+1) for k = {k}"));
                }
                if !self.defined.insert(k) || self.values.contains_key(&(generator.p, generator.a)) {
                    return Err(format!("g{k} or {generator} is already defined"));
                }
                Ok(step.conclusion.clone())
            }
            (Rule::Base, Conclusion::Value { generator, value }) => {
                shape(middles.len() == 1 && step.premises.len() == 1, "base")?;
                let p = middles[0];
                if generator.p != p || generator.a != min_transversal(&p) || !value.is_empty() {
                    return Err("base step does not match its relation".into());
                }
                Ok(step.conclusion.clone())
            }
            (Rule::Schreier, Conclusion::Value { generator, value }) => {
                shape(tops.len() == 1 && facts.len() == 1 && step.premises.len() == 2, "Schreier")?;
                let (p, from, to) = tops[0];
                let (known, w) = facts.iter().next().expect("one fact");
                let target = (generator.p, generator.a);
                let ok = (*known == (p, from) && target == (p, to)) || (*known == (p, to) && target == (p, from));
                if !ok || *w != *value {
                    return Err("Schreier step does not follow from its relation".into());
                }
                Ok(step.conclusion.clone())
            }
            (Rule::Corner | Rule::FlushLeft | Rule::FlushTop | Rule::ThreeQuarter, Conclusion::Value { generator, value }) => {
                shape(squares.len() == 1 && step.witness.is_some() && tops.len() <= 1 && middles.is_empty(), "square")?;
                let sq = squares[0];
                let target = (generator.p, generator.a);
                let corners = sq.corners();
                let ti = corners.iter().position(|c| *c == target).ok_or("target is not a corner")?;
                let fact = |i: usize| facts.get(&corners[i]);
                // corners: 0 = PA, 1 = PB, 2 = QA, 3 = QB
                let (row_mate, col_mate, diag) = (ti ^ 1, ti ^ 2, ti ^ 3);
                let linked = |i: usize, j: usize| {
                    tops.iter().any(|&(p, from, to)| {
                        let (x, y) = ((p, from), (p, to));
                        (corners[i] == x && corners[j] == y) || (corners[i] == y && corners[j] == x)
                    })
                };
                let equal = |i: usize, j: usize| match (fact(i), fact(j)) {
                    (Some(x), Some(y)) => x == y,
                    _ => false,
                };
                let trivial = |i: usize| fact(i).is_some_and(|w| w.is_empty());
                let ok = match step.rule {
                    Rule::Corner => tops.is_empty() && [row_mate, col_mate, diag].iter().all(|&i| trivial(i)),
                    // the column without the target: the row mate and the diagonal
                    Rule::FlushLeft => tops.is_empty() && equal(row_mate, diag),
                    Rule::FlushTop => equal(col_mate, diag) || linked(col_mate, diag),
                    _ => tops.is_empty() && trivial(diag),
                };
                shape(ok, "rule-conforming square")?;
                let solved = self.solve(&sq, ti, &facts, &tops)?;
                if solved != free_reduce(value) {
                    return Err(format!("solving gives {solved:?}, claimed {value:?}"));
                }
                Ok(step.conclusion.clone())
            }
            (Rule::SquareRelator, Conclusion::Relation { relator }) => {
                shape(squares.len() == 1 && step.witness.is_some() && tops.is_empty() && middles.is_empty(), "square relator")?;
                let sq = squares[0];
                let mut w = Vec::new();
                for (i, e) in [(0usize, -1i8), (1, 1), (3, -1), (2, 1)] {
                    let v = facts.get(&sq.corners()[i]).ok_or("a corner of the square is unknown")?;
                    w.extend(if e > 0 { v.clone() } else { word::inverse(v) });
                }
                same_relator(&w, relator)?;
                Ok(step.conclusion.clone())
            }
            (Rule::BraidCombination, Conclusion::Relation { relator }) => {
                shape(squares.len() == 2 && tops.is_empty() && middles.is_empty(), "combination")?;
                let shared: Vec<Pair> = squares[0]
                    .corners()
                    .into_iter()
                    .filter(|c| squares[1].corners().contains(c) && !facts.contains_key(c))
                    .collect();
                shape(shared.len() == 1, "combination with one shared unknown")?;
                let mut sols = Vec::new();
                for sq in &squares {
                    let ti = sq.corners().iter().position(|c| *c == shared[0]).expect("shared corner");
                    sols.push(self.solve(sq, ti, &facts, &[])?);
                }
                same_relator(&word::concat(&[&sols[0], &word::inverse(&sols[1])]), relator)?;
                Ok(step.conclusion.clone())
            }
            _ => Err("conclusion kind does not fit the rule".into()),
        }
    }

    /// Solve the relation of `sq` for corner `ti`, substituting known corners
    /// and the cited Schreier identifications.
    fn solve(&self, sq: &Square, ti: usize, facts: &HashMap<Pair, Word>, tops: &[(Partition, Subset, Subset)]) -> Result<Word, String> {
        let corners = sq.corners();
        let mut class: [usize; 4] = [0, 1, 2, 3];
        for &(p, from, to) in tops {
            let i = corners.iter().position(|c| *c == (p, from));
            let j = corners.iter().position(|c| *c == (p, to));
            match (i, j) {
                (Some(i), Some(j)) => {
                    let (lo, hi) = (class[i].min(class[j]), class[i].max(class[j]));
                    class.iter_mut().filter(|c| **c == hi).for_each(|c| *c = lo);
                }
                _ => return Err("cited Schreier relation does not join two corners".into()),
            }
        }
        let mut w = Word::new();
        // f_PA^-1 f_PB f_QB^-1 f_QA
        for (i, e) in [(0usize, -1i32), (1, 1), (3, -1), (2, 1)] {
            if i == ti {
                w.push(e * (UNKNOWN + ti as i32));
                continue;
            }
            match facts.get(&corners[i]) {
                Some(v) => {
                    self.check_word(v)?;
                    w.extend(if e > 0 { v.clone() } else { word::inverse(v) });
                }
                None if class[i] != class[ti] => w.push(e * (UNKNOWN + class[i] as i32)),
                None => return Err("a corner equals the target by substitution".into()),
            }
        }
        let w = cyclic_reduce(&w);
        let t = generator_of(UNKNOWN + ti as i32);
        if w.iter().any(|&l| l.abs() >= UNKNOWN && generator_of(l) != t) {
            return Err("unknown corners remain after substitution".into());
        }
        let sol = solve_for(&w, t).ok_or("the target does not occur exactly once")?;
        Ok(free_reduce(&sol))
    }
}

fn same_relator(computed: &[i32], claimed: &[i32]) -> Result<(), String> {
    if canonical_relator(computed) != canonical_relator(claimed) || canonical_relator(claimed).is_empty() {
        return Err(format!("relator {computed:?} differs from claimed {claimed:?}"));
    }
    Ok(())
}

/// Check the steps only; they may cite nothing outside themselves.
pub fn replay_steps(n: usize, r: usize, steps: &[DerivationStep]) -> ReplayReport {
    let (_, report) = run_steps(n, r, steps);
    report
}

fn run_steps(n: usize, r: usize, steps: &[DerivationStep]) -> (Checker, ReplayReport) {
    let mut c = Checker::new(n, r);
    let mut report = ReplayReport::default();
    for (i, s) in steps.iter().enumerate() {
        let res = c.step(i, s).and_then(|conc| {
            if let Conclusion::Value { generator, value } = &conc {
                c.check_word(value)?;
                let key = (generator.p, generator.a);
                match c.values.get(&key) {
                    Some(old) if free_reduce(old) != free_reduce(value) => {
                        return Err(format!("{generator} receives a second, different value"));
                    }
                    Some(_) => {}
                    None => {
                        c.values.insert(key, free_reduce(value));
                    }
                }
            }
            if let Conclusion::Relation { relator } = &conc {
                c.check_word(relator)?;
                c.relators.push(relator.clone());
            }
            Ok(conc)
        });
        match res {
            Ok(conc) => c.passed.push(Some(conc)),
            Err(reason) => {
                c.passed.push(None);
                report.failures.push(ReplayFailure { step: Some(i), reason });
            }
        }
        report.steps_checked += 1;
    }
    report.values = c.values.len();
    report.relators = c.relators.len();
    (c, report)
}

/// Replay a whole log: every step, then the closing checks that make the
/// derivation a sequence of Tietze moves from the presentation to the
/// Coxeter presentation.
pub fn replay(log: &DerivationLog) -> ReplayReport {
    let (n, r) = (log.n, log.r);
    let (c, mut report) = run_steps(n, r, &log.steps);
    let mut fail = |reason: String| report.failures.push(ReplayFailure { step: None, reason });
    let (pres, _) = match build_presentation(n, r) {
        Ok(x) => x,
        Err(e) => {
            fail(e.to_string());
            return report;
        }
    };
    let mut images: Vec<Option<Word>> = Vec::with_capacity(pres.generators.len());
    for s in &pres.generators {
        let Symbol::F(GeneratorId { p, a, .. }) = s else {
            images.push(None);
            continue;
        };
        images.push(c.values.get(&(*p, *a)).cloned());
    }
    let missing = images.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        fail(format!("{missing} generators have no value"));
    }
    if c.defined != (1..r).collect() {
        fail(format!("defined Coxeter generators {:?}, expected 1..{}", c.defined, r.saturating_sub(1)));
    }
    if missing == 0 {
        let broken = pres
            .relations
            .iter()
            .filter(|rel| {
                let w = word::substitute_all(&rel.relator(), &|g| images[g].clone());
                evaluate_word(&w, r).map_or(true, |p| !p.is_identity())
            })
            .count();
        if broken > 0 {
            fail(format!("{broken} relations fail in S_{r} after substitution"));
        }
    }
    let cox = coxeter_presentation(r);
    let want: HashSet<Word> = cox.relators().iter().map(|w| canonical_relator(w)).collect();
    let got: HashSet<Word> = c.relators.iter().map(|w| canonical_relator(w)).collect();
    if want != got || c.relators.len() != want.len() {
        fail(format!("derived {} relators, expected the {} Coxeter relators", c.relators.len(), want.len()));
    }
    if log.snapshot != cox {
        fail("the snapshot is not the Coxeter presentation".into());
    }
    report
}
