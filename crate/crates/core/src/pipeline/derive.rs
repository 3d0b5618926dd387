use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::combinatorics::{enumerate_partitions, min_transversal, require_transversal, transversals, Partition, Subset};
use crate::error::{invalid, precondition, Result};
use crate::label::label_unchecked;
use crate::permutation::{contiguous_cycle, Permutation};
use crate::presentation::{coxeter_presentation, GeneratorId, Word};
use crate::schreier::schreier_step;
use crate::square::Square;

use super::construct::{
    canonical_cycle_pair, coxeter_square_braid, coxeter_square_braid_partner, coxeter_square_commute,
    coxeter_square_involution, cycle_split, descent_reduction,
};
use super::links::{cycle_equal_links, same_column_links, same_row_links, Link};
use super::{coxeter_word, Conclusion, DerivationLog, DerivationStep, Premise, Rule, Witness};

type Pair = (Partition, Subset);

/// Builds a derivation step by step, remembering which step fixed the value
/// of each generator.
pub struct Deriver {
    n: usize,
    r: usize,
    steps: Vec<DerivationStep>,
    facts: HashMap<Pair, usize>,
}

impl Deriver {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r > n || n > crate::combinatorics::MAX_N {
            return Err(invalid(format!("need 1 ≤ r ≤ n ≤ 16, got n = {n}, r = {r}")));
        }
        Ok(Deriver {
            n,
            r,
            steps: Vec::new(),
            facts: HashMap::new(),
        })
    }

    pub fn steps(&self) -> &[DerivationStep] {
        &self.steps
    }

    /// The step that fixed the value of `f_{P,A}`, if any.
    pub fn fact(&self, p: &Partition, a: &Subset) -> Option<usize> {
        self.facts.get(&(*p, *a)).copied()
    }

    pub fn value(&self, p: &Partition, a: &Subset) -> Option<&Word> {
        let i = self.fact(p, a)?;
        match &self.steps[i].conclusion {
            Conclusion::Value { value, .. } => Some(value),
            Conclusion::Relation { .. } => None,
        }
    }

    fn push(&mut self, step: DerivationStep) -> usize {
        let i = self.steps.len();
        if let Conclusion::Value { generator, .. } = &step.conclusion {
            self.facts.entry((generator.p, generator.a)).or_insert(i);
        }
        self.steps.push(step);
        i
    }

    fn value_step(&mut self, rule: Rule, witness: Option<Square>, premises: Vec<Premise>, target: Pair) -> usize {
        let generator = GeneratorId::new_unchecked(target.0, target.1);
        let value = coxeter_word(&generator.label);
        self.push(DerivationStep {
            rule,
            witness: witness.map(Witness::of),
            premises,
            conclusion: Conclusion::Value { generator, value },
        })
    }

    fn known(&self, pair: &Pair) -> Result<Premise> {
        self.facts
            .get(pair)
            .map(|&index| Premise::Step { index })
            .ok_or_else(|| invalid(format!("no value known for f[{}|{}]", pair.0, pair.1)))
    }

    /// Derive from a square whose corners other than `target` are known,
    /// possibly with one Schreier substitution.
    fn square_step(&mut self, rule: Rule, sq: Square, target: Pair, top: Option<Premise>, others: &[Pair]) -> Result<usize> {
        let mut premises = vec![Premise::Bottom { square: sq }];
        premises.extend(top);
        for o in others {
            premises.push(self.known(o)?);
        }
        Ok(self.value_step(rule, Some(sq), premises, target))
    }

    /// `f_{P,A(P)} = 1`.
    pub fn base(&mut self, p: &Partition) -> usize {
        let a = min_transversal(p);
        if let Some(i) = self.fact(p, &a) {
            return i;
        }
        self.value_step(Rule::Base, None, vec![Premise::Middle { p: *p }], (*p, a))
    }

    /// `f_{P,A} = 1` for `P = {{1},...,{r-1},[r,n]}` and `A = [1,r-1] ∪ {a}`.
    pub fn identity_one(&mut self, p: &Partition, a: &Subset) -> Result<usize> {
        let (n, r) = (self.n, self.r);
        let staircase = Partition::convex_from_minima(n, &(1..=r as u8).collect::<Vec<_>>())?;
        require_transversal(a, p)?;
        if *p != staircase {
            return Err(precondition(format!("{p} is not {staircase}")));
        }
        if let Some(i) = self.fact(p, a) {
            return Ok(i);
        }
        let Some((b, q)) = schreier_step(a) else {
            return Ok(self.base(p));
        };
        debug_assert_eq!(q, *p);
        let prev = self.identity_one(p, &b)?;
        let premises = vec![Premise::Top { p: *p, from: b, to: *a }, Premise::Step { index: prev }];
        Ok(self.value_step(Rule::Schreier, None, premises, (*p, *a)))
    }

    /// `f_{P,A} = 1` for convex `P` and identity label.
    pub fn identity_convex(&mut self, p: &Partition, a: &Subset) -> Result<usize> {
        require_transversal(a, p)?;
        if !p.is_convex() {
            return Err(precondition(format!("{p} is not convex")));
        }
        if !label_unchecked(p, a).is_identity() {
            return Err(precondition(format!("f[{p}|{a}] has a nontrivial label")));
        }
        if let Some(i) = self.fact(p, a) {
            return Ok(i);
        }
        let ap = min_transversal(p);
        if *a == ap {
            return Ok(self.base(p));
        }
        let pm = p.minima();
        let r = self.r;
        let Some(m) = (1..r).find(|&m| pm[m] as usize != m + 1) else {
            return self.identity_one(p, a);
        };
        let av = a.elements();
        let t = (1..=r).find(|&t| av[t - 1] != pm[t - 1]).expect("A differs from A(P)");
        if t == m {
            let (b, q) = schreier_step(a).ok_or_else(|| invalid("no Schreier step below A"))?;
            let prev = self.identity_convex(p, &b)?;
            if q == *p {
                let premises = vec![Premise::Top { p: *p, from: b, to: *a }, Premise::Step { index: prev }];
                return Ok(self.value_step(Rule::Schreier, None, premises, (*p, *a)));
            }
            let sq = Square::new(*p, q, *a, b)?;
            let top = Premise::Top { p: q, from: b, to: *a };
            self.square_step(Rule::FlushTop, sq, (*p, *a), Some(top), &[(*p, b)])
        } else {
            let q = p.with_moved(pm[m] - 1, m + 1)?;
            self.identity_convex(&q, a)?;
            self.identity_convex(&q, &ap)?;
            self.base(p);
            let sq = Square::new(*p, q, *a, ap)?;
            self.square_step(Rule::Corner, sq, (*p, *a), None, &[(*p, ap), (q, *a), (q, ap)])
        }
    }

    /// `f_{P,A} = 1` whenever `λ(P,A) = ()`.
    pub fn identity_general(&mut self, p: &Partition, a: &Subset) -> Result<usize> {
        require_transversal(a, p)?;
        if !label_unchecked(p, a).is_identity() {
            return Err(precondition(format!("f[{p}|{a}] has a nontrivial label")));
        }
        if let Some(i) = self.fact(p, a) {
            return Ok(i);
        }
        if *a == min_transversal(p) {
            return Ok(self.base(p));
        }
        if p.is_convex() {
            return self.identity_convex(p, a);
        }
        let pm = p.minima();
        let av = a.elements();
        let m = (1..=self.r).find(|&m| pm[m - 1] != av[m - 1]).expect("A differs from A(P)");
        let mut mins: Vec<u8> = pm[..m].to_vec();
        mins.extend_from_slice(&av[m..]);
        let b = Subset::new(self.n, &mins)?;
        let q = Partition::convex_from_minima(self.n, &mins)?;
        self.identity_convex(&q, a)?;
        self.identity_convex(&q, &b)?;
        self.identity_general(p, &b)?;
        let sq = Square::new(*p, q, *a, b)?;
        self.square_step(Rule::Corner, sq, (*p, *a), None, &[(*p, b), (q, *a), (q, b)])
    }

    /// Make sure both identity corners of a link are known.
    fn prepare(&mut self, link: &Link) -> Result<()> {
        for (p, a) in link.helpers() {
            self.identity_general(&p, &a)?;
        }
        Ok(())
    }

    /// Carry a value across one link, citing `from_step` for the known end.
    fn cross(&mut self, link: &Link, from_step: usize, to: Pair) -> Result<usize> {
        self.prepare(link)?;
        let rule = match link {
            Link::Column { .. } => Rule::FlushLeft,
            Link::Row { .. } => Rule::FlushTop,
        };
        let sq = link.square();
        let mut premises = vec![Premise::Bottom { square: sq }, Premise::Step { index: from_step }];
        for h in link.helpers() {
            premises.push(self.known(&h)?);
        }
        Ok(self.value_step(rule, Some(sq), premises, to))
    }

    /// Spread values from known ends along the given links until nothing
    /// changes. Returns the steps emitted.
    pub fn propagate(&mut self, links: &[Link]) -> Result<Vec<usize>> {
        let mut adj: BTreeMap<Pair, Vec<(usize, Pair)>> = BTreeMap::new();
        for (i, l) in links.iter().enumerate() {
            let [x, y] = l.ends();
            adj.entry(x).or_default().push((i, y));
            adj.entry(y).or_default().push((i, x));
        }
        let mut queue: VecDeque<Pair> = adj.keys().filter(|k| self.facts.contains_key(k)).copied().collect();
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &(i, y) in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if self.facts.contains_key(&y) {
                    continue;
                }
                let from = self.facts[&x];
                out.push(self.cross(&links[i], from, y)?);
                queue.push_back(y);
            }
        }
        Ok(out)
    }

    /// Re-derive the value of `(Q,A)` from that of `(P,A)` along a column
    /// chain, even if it is already known.
    pub fn same_column(&mut self, p: &Partition, q: &Partition, a: &Subset) -> Result<Vec<usize>> {
        let links = same_column_links(p, q, a)?;
        self.walk(&links, (*p, *a))
    }

    /// Re-derive the value of `(P,B)` from that of `(P,A)`.
    pub fn same_row(&mut self, p: &Partition, a: &Subset, b: &Subset) -> Result<Vec<usize>> {
        let links = same_row_links(p, a, b)?;
        self.walk(&links, (*p, *a))
    }

    /// Re-derive the value of the canonical pair of the label from `(P,A)`.
    pub fn cycle_equal(&mut self, p: &Partition, a: &Subset) -> Result<Vec<usize>> {
        let links = cycle_equal_links(p, a)?;
        self.walk(&links, (*p, *a))
    }

    /// Follow links outward from `start`, whose value must be known, citing
    /// only steps of this walk.
    fn walk(&mut self, links: &[Link], start: Pair) -> Result<Vec<usize>> {
        let first = self.fact(&start.0, &start.1).ok_or_else(|| invalid("no value known for the start"))?;
        let mut reached: HashMap<Pair, usize> = HashMap::from([(start, first)]);
        let mut pending: Vec<&Link> = links.iter().collect();
        let mut out = Vec::new();
        while !pending.is_empty() {
            let pos = pending
                .iter()
                .position(|l| l.ends().iter().any(|e| reached.contains_key(e)))
                .ok_or_else(|| invalid("link chain is not connected"))?;
            let l = pending.remove(pos);
            let [x, y] = l.ends();
            let (from, to) = if reached.contains_key(&x) { (x, y) } else { (y, x) };
            if reached.contains_key(&to) {
                continue;
            }
            let step = self.cross(l, reached[&from], to)?;
            out.push(step);
            reached.insert(to, step);
        }
        Ok(out)
    }

    /// Phase 1: every generator with identity label equals 1.
    pub fn phase_identity(&mut self) -> Result<()> {
        for (p, a) in self.pairs(|pi| pi.is_identity())? {
            self.identity_general(&p, &a)?;
        }
        Ok(())
    }

    /// Phases 2 and 3: one Coxeter generator per adjacent transposition, then
    /// every contiguous cycle.
    pub fn phase_cycles(&mut self) -> Result<()> {
        let (n, r) = (self.n, self.r);
        for l in 1..r {
            for k in 1..=r - l {
                let xi = contiguous_cycle(k, l, r)?;
                if l == 1 {
                    let (p, a) = canonical_cycle_pair(k, 1, n, r)?;
                    self.define(k, &p, &a);
                } else {
                    let sq = cycle_split(k, l, n, r)?;
                    let others = [(sq.p, sq.a), (sq.p, sq.b), (sq.q, sq.a)];
                    self.identity_general(&sq.p, &sq.a)?;
                    self.square_step(Rule::ThreeQuarter, sq, (sq.q, sq.b), None, &others)?;
                }
                let class = self.pairs(|pi| *pi == xi)?;
                let mut links = Vec::new();
                for (p, a) in &class {
                    links.extend(cycle_equal_links(p, a)?);
                }
                self.propagate(&links)?;
                if let Some((p, a)) = class.iter().find(|x| !self.facts.contains_key(x)) {
                    return Err(invalid(format!("f[{p}|{a}] not reached within its label class")));
                }
            }
        }
        Ok(())
    }

    fn define(&mut self, k: usize, p: &Partition, a: &Subset) -> usize {
        self.push(DerivationStep {
            rule: Rule::Define,
            witness: None,
            premises: Vec::new(),
            conclusion: Conclusion::Value {
                generator: GeneratorId::new_unchecked(*p, *a),
                value: vec![k as i32],
            },
        })
    }

    /// Phase 4: generators with two or more descents, each at its own pair.
    pub fn phase_descents(&mut self) -> Result<()> {
        let mut todo = self.pairs(|pi| pi.descent_number() >= 2)?;
        todo.sort_by_key(|(p, a)| label_unchecked(p, a).descent_number());
        for (p, a) in todo {
            let red = descent_reduction(&p, &a)?;
            let sq = red.square;
            self.square_step(Rule::ThreeQuarter, sq, (p, a), None, &[(p, sq.b), (sq.q, a), (sq.q, sq.b)])?;
        }
        Ok(())
    }

    /// Phases 5 and 6: the Coxeter relations.
    pub fn phase_coxeter(&mut self) -> Result<()> {
        let (n, r) = (self.n, self.r);
        let cox = coxeter_presentation(r);
        let relator = |i: usize| cox.relations[i].relator();
        let mut next = 0;
        for k in 1..r {
            let sq = coxeter_square_involution(k, n, r)?;
            let premises = self.corner_premises(&sq, None)?;
            self.push(DerivationStep {
                rule: Rule::SquareRelator,
                witness: Some(Witness::of(sq)),
                premises,
                conclusion: Conclusion::Relation { relator: relator(next) },
            });
            next += 1;
        }
        for k in 1..r {
            for l in k + 2..r {
                let (s1, s2) = coxeter_square_commute(k, l, n, r)?;
                self.combine(s1, s2, (s1.q, s1.b), relator(next))?;
                next += 1;
            }
        }
        for k in 1..r.saturating_sub(1) {
            let s1 = coxeter_square_braid(k, n, r)?;
            let s2 = coxeter_square_braid_partner(k, n, r)?;
            self.combine(s1, s2, (s1.q, s1.b), relator(next))?;
            next += 1;
        }
        Ok(())
    }

    fn corner_premises(&self, sq: &Square, skip: Option<Pair>) -> Result<Vec<Premise>> {
        let mut out = vec![Premise::Bottom { square: *sq }];
        for c in [(sq.p, sq.a), (sq.p, sq.b), (sq.q, sq.a), (sq.q, sq.b)] {
            if Some(c) != skip {
                out.push(self.known(&c)?);
            }
        }
        Ok(out)
    }

    fn combine(&mut self, s1: Square, s2: Square, shared: Pair, relator: Word) -> Result<usize> {
        let mut premises = self.corner_premises(&s1, Some(shared))?;
        premises.extend(self.corner_premises(&s2, Some(shared))?);
        Ok(self.push(DerivationStep {
            rule: Rule::BraidCombination,
            witness: None,
            premises,
            conclusion: Conclusion::Relation { relator },
        }))
    }

    /// All phases in order.
    pub fn run(&mut self) -> Result<()> {
        self.phase_identity()?;
        self.phase_cycles()?;
        self.phase_descents()?;
        self.phase_coxeter()
    }

    /// Transversal pairs whose label satisfies `keep`, ordered by `A` then `P`.
    fn pairs(&self, keep: impl Fn(&Permutation) -> bool) -> Result<Vec<Pair>> {
        let mut out = Vec::new();
        for p in enumerate_partitions(self.n, self.r)? {
            for a in transversals(&p) {
                if keep(&label_unchecked(&p, &a)) {
                    out.push((p, a));
                }
            }
        }
        out.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
        Ok(out)
    }

    pub fn into_log(self) -> DerivationLog {
        DerivationLog {
            n: self.n,
            r: self.r,
            steps: self.steps,
            snapshot: coxeter_presentation(self.r),
        }
    }
}

fn fragment(n: usize, r: usize, f: impl FnOnce(&mut Deriver) -> Result<usize>) -> Result<Vec<DerivationStep>> {
    let mut d = Deriver::new(n, r)?;
    f(&mut d)?;
    Ok(d.steps)
}

/// Steps deriving `f_{P,A} = 1` for the staircase partition and
/// `A = [1,r-1] ∪ {a}`.
pub fn derive_identity_one(p: &Partition, a: u8) -> Result<Vec<DerivationStep>> {
    let (n, r) = (p.n(), p.r());
    let mut els: Vec<u8> = (1..r as u8).collect();
    if (a as usize) < r || a as usize > n {
        return Err(precondition(format!("a = {a} must lie in [{r}, {n}]")));
    }
    els.push(a);
    let s = Subset::new(n, &els)?;
    fragment(n, r, |d| d.identity_one(p, &s))
}

pub fn derive_identity_convex(p: &Partition, a: &Subset) -> Result<Vec<DerivationStep>> {
    fragment(p.n(), p.r(), |d| d.identity_convex(p, a))
}

pub fn derive_identity_general(p: &Partition, a: &Subset) -> Result<Vec<DerivationStep>> {
    fragment(p.n(), p.r(), |d| d.identity_general(p, a))
}
