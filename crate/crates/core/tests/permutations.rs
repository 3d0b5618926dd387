use igtn_core::permutation::all_permutations;
use igtn_core::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(s: &str, r: usize) -> Permutation {
    Permutation::parse(s, r).unwrap()
}

/// Descent starts counted straight from the definition.
fn brute_descents(images: &[u8]) -> usize {
    (0..images.len())
        .filter(|&i| (i + 1..images.len()).any(|j| images[j] < images[i]))
        .count()
}

#[test]
fn notation_examples() {
    let p = perm("[3,2,4,1]", 4);
    assert_eq!(p.cycle_form(), "(1 3 4)");
    assert_eq!(perm("(1 3 4)", 4), p);
    assert_eq!(p.descent_number(), 3);
    assert_eq!(contiguous_cycle(1, 2, 3).unwrap().image_form(), "[3,1,2]");
    assert_eq!(contiguous_cycle(2, 1, 4).unwrap(), perm("(2 3)", 4));
    assert_eq!(Permutation::identity(5).descent_number(), 0);
    assert!(contiguous_cycle(3, 2, 4).is_err());
}

#[test]
fn descent_one_is_exactly_contiguous_cycles() {
    for r in 1..=6 {
        let mut cycles = Vec::new();
        for k in 1..r {
            for l in 1..=r - k {
                let xi = contiguous_cycle(k, l, r).unwrap();
                for x in 1..=r as u8 {
                    if (x as usize) < k || x as usize > k + l {
                        assert_eq!(xi.apply(x), x);
                    }
                }
                cycles.push(xi);
            }
        }
        for p in all_permutations(r) {
            let d = brute_descents(p.images());
            assert_eq!(p.descent_number(), d);
            assert_eq!(d == 0, p.is_identity());
            assert_eq!(d == 1, cycles.contains(&p), "{p}");
            match p.classify_descent_one() {
                Some((k, l)) => {
                    assert_eq!(d, 1);
                    assert_eq!(contiguous_cycle(k, l, r).unwrap(), p);
                    let loc = p.rightmost_descent().unwrap();
                    assert_eq!((loc.v, loc.w), (k, l));
                }
                None => assert_ne!(d, 1),
            }
        }
    }
}

#[test]
fn rightmost_descent_locator() {
    let loc = perm("[4,2,3,1]", 4).rightmost_descent().unwrap();
    assert_eq!((loc.v, loc.w), (3, 1));
    assert!(Permutation::identity(4).rightmost_descent().is_none());
    for r in 1..=6 {
        for p in all_permutations(r) {
            let Some(loc) = p.rightmost_descent() else {
                assert!(p.is_identity());
                continue;
            };
            let l = p.images();
            let (v, w) = (loc.v, loc.w);
            assert!(1 <= v && v + w <= r && l[v - 1] > l[v + w - 1]);
            for s in v + 1..=r {
                assert!((s + 1..=r).all(|u| l[s - 1] < l[u - 1]), "descent starts after {v} in {p:?}");
            }
            assert!((v + w + 1..=r).all(|u| l[v - 1] < l[u - 1]));
        }
    }
}

#[test]
fn splitting_lowers_descents_by_one() {
    for r in 2..=6 {
        for p in all_permutations(r) {
            let d = p.descent_number();
            if d == 0 {
                assert!(p.split_rightmost_descent().is_none());
                continue;
            }
            let (loc, cycle, rest) = p.split_rightmost_descent().unwrap();
            assert_eq!(cycle, contiguous_cycle(loc.v, loc.w, r).unwrap());
            assert_eq!(rest.descent_number(), d - 1, "{p:?}");
            assert_eq!(cycle * rest, p);
        }
    }
}

#[test]
fn group_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for r in 1..=8 {
        let mut pool: Vec<u8> = (1..=r as u8).collect();
        let mut sample = || {
            pool.shuffle(&mut rng);
            Permutation::new(&pool).unwrap()
        };
        for _ in 0..50 {
            let (a, b, c) = (sample(), sample(), sample());
            assert_eq!((a * b) * c, a * (b * c));
            assert!((a * a.inverse()).is_identity());
            for x in 1..=r as u8 {
                assert_eq!((a * b).apply(x), b.apply(a.apply(x)));
            }
            assert_eq!(perm(&a.cycle_form(), r), a);
            assert_eq!(perm(&a.image_form(), r), a);
        }
    }
}

#[test]
fn rejects_non_bijections() {
    assert!(Permutation::new(&[1, 1, 2]).is_err());
    assert!(Permutation::parse("(1 5)", 4).is_err());
    assert!(Permutation::parse("[2,1]", 3).is_err());
}
