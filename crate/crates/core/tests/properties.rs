use std::collections::BTreeMap;

use igtn_core::presentation::{canonical_relator, cyclic_reduce, free_reduce, inverse};
use igtn_core::*;
use proptest::prelude::*;

/// A partition of `[1,n]` from arbitrary block tags, and a transversal
/// chosen by the given picks.
fn pair() -> impl Strategy<Value = (Partition, Subset)> {
    (2usize..=9)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0u8..6, n), prop::collection::vec(any::<usize>(), 6)))
        .prop_map(|(n, tags, picks)| {
            let mut groups: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
            for (i, t) in tags.iter().enumerate() {
                groups.entry(*t).or_default().push(i as u8 + 1);
            }
            let blocks: Vec<Vec<u8>> = groups.into_values().collect();
            let p = Partition::from_blocks(n, &blocks).unwrap();
            let mut a: Vec<u8> = blocks.iter().zip(&picks).map(|(b, k)| b[k % b.len()]).collect();
            a.sort();
            (p, Subset::new(n, &a).unwrap())
        })
}

/// Two partitions of the same rank with two common transversals.
fn square() -> impl Strategy<Value = Square> {
    (3usize..=7)
        .prop_flat_map(|n| (Just(n), 2..n))
        .prop_flat_map(|(n, r)| (Just(n), Just(r), any::<usize>(), any::<usize>(), any::<usize>(), any::<usize>()))
        .prop_filter_map("no common transversals", |(n, r, i, j, x, y)| {
            let parts: Vec<Partition> = enumerate_partitions(n, r).unwrap().collect();
            let (p, q) = (parts[i % parts.len()], parts[j % parts.len()]);
            let tq = transversals(&q);
            let common: Vec<Subset> = transversals(&p).into_iter().filter(|b| tq.contains(b)).collect();
            if common.is_empty() {
                return None;
            }
            Square::new(p, q, common[x % common.len()], common[y % common.len()]).ok()
        })
}

fn map(n: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(1..=n as u8, n).prop_map(|v| Transformation::new(&v).unwrap())
}

fn word() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![1i32..=4, -4i32..=-1], 0..24)
}

proptest! {
    #[test]
    fn idempotent_has_kernel_and_image((p, a) in pair()) {
        let e = idempotent(&p, &a).unwrap();
        prop_assert!(e.is_idempotent());
        prop_assert_eq!(e.kernel(), p);
        prop_assert_eq!(e.image(), a);
        prop_assert_eq!(e.rank(), p.r());
    }

    #[test]
    fn partition_text_is_canonical((p, a) in pair()) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        prop_assert_eq!(Subset::parse(&a.to_string(), a.n()).unwrap(), a);
        prop_assert!(is_transversal(&a, &p).unwrap());
        prop_assert!(min_transversal(&p).lex_cmp(&a) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn labels_agree_by_both_definitions((p, a) in pair()) {
        let lam = label(&p, &a).unwrap();
        prop_assert_eq!(lam, label_by_subscripts(&p, &a).unwrap());
        prop_assert!(label(&p, &min_transversal(&p)).unwrap().is_identity());
        prop_assert_eq!(Permutation::parse(&lam.cycle_form(), p.r()).unwrap(), lam);
        prop_assert_eq!(evaluate_word(&coxeter_word(&lam), p.r()).unwrap(), lam);
    }

    #[test]
    fn square_criteria_agree(s in square()) {
        let sq2 = is_singular_sq2(&s).unwrap();
        prop_assert_eq!(sq2, is_singular_sq3(&s).unwrap());
        prop_assert_eq!(sq2, is_rectangular_band(&s).unwrap());
        prop_assert_eq!(sq2, is_singular_sq2(&s.swap_rows()).unwrap());
        prop_assert_eq!(sq2, is_singular_sq2(&s.swap_columns()).unwrap());
    }

    #[test]
    fn composition_lowers_rank(s in map(7), t in map(7)) {
        let st = compose(&s, &t).unwrap();
        prop_assert!(st.rank() <= s.rank().min(t.rank()));
        for x in 1..=7 {
            prop_assert_eq!(st.apply(x), t.apply(s.apply(x)));
        }
    }

    #[test]
    fn reduction_is_idempotent(w in word()) {
        let f = free_reduce(&w);
        prop_assert_eq!(free_reduce(&f), f.clone());
        prop_assert!(f.windows(2).all(|x| x[0] != -x[1]));
        prop_assert!(free_reduce(&[w.as_slice(), &inverse(&w)].concat()).is_empty());
        let c = cyclic_reduce(&w);
        prop_assert_eq!(cyclic_reduce(&c), c.clone());
        prop_assert_eq!(canonical_relator(&canonical_relator(&w)), canonical_relator(&w));
    }

    #[test]
    fn permutation_laws(v in Just((1..=8u8).collect::<Vec<_>>()).prop_shuffle(), u in Just((1..=8u8).collect::<Vec<_>>()).prop_shuffle()) {
        let (a, b) = (Permutation::new(&v).unwrap(), Permutation::new(&u).unwrap());
        prop_assert!((a * a.inverse()).is_identity());
        prop_assert_eq!((a * b).inverse(), b.inverse() * a.inverse());
        prop_assert_eq!(Permutation::parse(&a.image_form(), 8).unwrap(), a);
        if let Some((_, cycle, rest)) = a.split_rightmost_descent() {
            prop_assert_eq!(cycle * rest, a);
            prop_assert_eq!(rest.descent_number() + 1, a.descent_number());
        }
    }
}
