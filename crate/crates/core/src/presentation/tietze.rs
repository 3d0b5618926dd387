//! Heuristic Tietze simplification: repeatedly eliminate a generator that
//! occurs exactly once in a short relator.

use std::collections::{HashMap, HashSet};

use super::word::{self, canonical_relator, cyclic_reduce, generator_of, solve_for, Word};
use super::{GroupPresentation, Provenance, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TietzeLimits {
    /// Longest relator that may be used to eliminate a generator.
    pub max_relation_length: usize,
    pub max_passes: usize,
}

impl Default for TietzeLimits {
    fn default() -> Self {
        TietzeLimits {
            max_relation_length: 8,
            max_passes: 200,
        }
    }
}

struct State {
    relators: Vec<(Word, Provenance)>,
    defs: Vec<Option<(Word, Provenance)>>,
}

impl State {
    fn resolve(&self, g: usize, memo: &mut HashMap<usize, Word>) -> Option<Word> {
        let (def, _) = self.defs[g].as_ref()?;
        if let Some(w) = memo.get(&g) {
            return Some(w.clone());
        }
        let mut out = Vec::new();
        for &l in def {
            let h = generator_of(l);
            match self.resolve(h, memo) {
                Some(v) if l > 0 => out.extend(v),
                Some(v) => out.extend(word::inverse(&v)),
                None => out.push(l),
            }
        }
        let out = word::free_reduce(&out);
        memo.insert(g, out.clone());
        Some(out)
    }

    /// Substitute all definitions, reduce, drop trivial and repeated relators.
    fn normalize(&mut self) -> bool {
        let mut memo = HashMap::new();
        let mut seen = HashSet::new();
        let before = self.relators.len();
        let mut changed = false;
        let old = std::mem::take(&mut self.relators);
        for (w, tag) in old {
            let mut t = tag;
            let mut out = Vec::with_capacity(w.len());
            for &l in &w {
                let g = generator_of(l);
                match self.resolve(g, &mut memo) {
                    Some(v) => {
                        changed = true;
                        t = t.merge(self.defs[g].as_ref().expect("defined").1);
                        if l > 0 {
                            out.extend(v)
                        } else {
                            out.extend(word::inverse(&v))
                        }
                    }
                    None => out.push(l),
                }
            }
            let red = cyclic_reduce(&out);
            if red.len() != w.len() {
                changed = true;
            }
            if red.is_empty() || !seen.insert(canonical_relator(&red)) {
                continue;
            }
            self.relators.push((red, t));
        }
        changed || self.relators.len() != before
    }

    fn eliminate_pass(&mut self, limit: usize) -> usize {
        let alive = |defs: &[Option<(Word, Provenance)>], l: i32| defs[generator_of(l)].is_none();
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&i| (self.relators[i].0.len(), i));
        let shortest = order
            .iter()
            .map(|&i| &self.relators[i].0)
            .find(|w| w.iter().any(|&l| word::occurrences(w, generator_of(l)) == 1))
            .map_or(usize::MAX, Vec::len);
        let cap = limit.min(shortest.max(2));
        let mut eliminated = 0;
        let mut used = vec![false; self.relators.len()];
        for &i in &order {
            if self.relators[i].0.len() > cap {
                break;
            }
            // rewrite with definitions made earlier in this pass
            let (w, tag) = self.relators[i].clone();
            if !w.iter().all(|&l| alive(&self.defs, l)) {
                continue;
            }
            let candidate = w
                .iter()
                .rev()
                .map(|&l| generator_of(l))
                .find(|&g| word::occurrences(&w, g) == 1);
            if let Some(g) = candidate {
                let sol = solve_for(&w, g).expect("single occurrence");
                self.defs[g] = Some((sol, tag));
                used[i] = true;
                eliminated += 1;
            }
        }
        let mut k = 0;
        self.relators.retain(|_| {
            k += 1;
            !used[k - 1]
        });
        eliminated
    }
}

/// Simplify within the given limits; the result presents the same group.
pub fn generic_tietze_simplify(pres: &GroupPresentation, limits: TietzeLimits) -> GroupPresentation {
    let mut st = State {
        relators: pres
            .relations
            .iter()
            .map(|r| (r.relator(), r.tag))
            .collect(),
        defs: vec![None; pres.generators.len()],
    };
    let mut touched = st.normalize();
    for _ in 0..limits.max_passes {
        if st.eliminate_pass(limits.max_relation_length) == 0 {
            break;
        }
        touched = true;
        st.normalize();
    }
    if !touched && st.relators.len() == pres.relations.len() {
        return pres.clone();
    }
    let mut new_index = vec![usize::MAX; pres.generators.len()];
    let mut generators = Vec::new();
    for (i, s) in pres.generators.iter().enumerate() {
        if st.defs[i].is_none() {
            new_index[i] = generators.len();
            generators.push(*s);
        }
    }
    let relations = st
        .relators
        .into_iter()
        .map(|(w, tag)| Relation {
            lhs: w
                .iter()
                .map(|&l| word::letter(new_index[generator_of(l)], l.signum() as i8))
                .collect(),
            rhs: Vec::new(),
            tag,
        })
        .collect();
    GroupPresentation {
        generators,
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{coxeter_presentation, Symbol};

    #[test]
    fn coxeter_is_fixed() {
        let c = coxeter_presentation(4);
        assert_eq!(generic_tietze_simplify(&c, TietzeLimits::default()), c);
    }

    #[test]
    fn chain_collapses() {
        let mut p = GroupPresentation::new((1..=3).map(|g| Symbol::G { g }).collect());
        p.add_relation(vec![1], vec![2], Provenance::Top).unwrap();
        p.add_relation(vec![2], vec![3, 3], Provenance::Top).unwrap();
        p.add_relation(vec![1, 1, 1], vec![], Provenance::Bottom).unwrap();
        let q = generic_tietze_simplify(&p, TietzeLimits::default());
        assert_eq!(q.generators.len(), 1);
        assert_eq!(q.relations.len(), 1);
        assert_eq!(q.relations[0].lhs.len(), 6);
        assert_eq!(q.relations[0].tag, Provenance::Derived);
    }
}

