use igtn_core::*;

fn pair(p: &str, a: &[u8]) -> (Partition, Subset) {
    let p: Partition = p.parse().unwrap();
    let a = Subset::new(p.n(), a).unwrap();
    (p, a)
}

#[test]
fn running_label() {
    let (p, a) = pair("{{1},{2,3,5},{4,7},{6}}", &[1, 4, 5, 6]);
    let want = Permutation::parse("(2 3)", 4).unwrap();
    assert_eq!(label(&p, &a).unwrap(), want);
    assert_eq!(label_by_subscripts(&p, &a).unwrap(), want);
    let ctx = LabelContext::new(&p, &a).unwrap();
    assert_eq!(ctx.rho_ap, [(1, 1), (2, 2), (3, 4), (4, 6)]);
    assert_eq!(ctx.gamma, [(1, 1), (2, 5), (4, 4), (6, 6)]);
    assert_eq!(ctx.composite(), want);
    let bad = Subset::new(7, &[1, 2, 3, 6]).unwrap();
    assert!(matches!(label(&p, &bad), Err(Error::TransversalityViolation { .. })));
}

#[test]
fn two_label_paths_agree() {
    for n in 1..=7 {
        for r in 1..=n {
            for p in enumerate_partitions(n, r).unwrap() {
                let ap = min_transversal(&p);
                assert!(label(&p, &ap).unwrap().is_identity());
                for a in transversals(&p) {
                    let l = label(&p, &a).unwrap();
                    assert_eq!(l, label_by_subscripts(&p, &a).unwrap());
                    let aligned = a.iter().enumerate().all(|(i, x)| p.block_of(x) == i + 1);
                    assert_eq!(l.is_identity(), aligned, "{p} {a}");
                    if p.is_convex() {
                        assert!(l.is_identity());
                    }
                }
            }
        }
    }
}

#[test]
fn spectra() {
    let s = label_spectrum(7, 4).unwrap();
    assert_eq!(s.values().sum::<u64>(), 2240);
    let s = label_spectrum(7, 5).unwrap();
    assert_eq!(s[&Permutation::parse("(2 3)(4 5)", 5).unwrap()], 2);
    let s = label_spectrum(5, 5).unwrap();
    assert_eq!(s.len(), 1);
    assert!(s.keys().next().unwrap().is_identity());
}

#[test]
fn disconnected_label_pairs() {
    let want = Permutation::parse("(2 3)(4 5)", 5).unwrap();
    for (p, a) in [
        pair("{{1},{2,4},{3},{5,7},{6}}", &[1, 3, 4, 6, 7]),
        pair("{{1},{2,5},{3},{4,7},{6}}", &[1, 3, 5, 6, 7]),
    ] {
        assert_eq!(label(&p, &a).unwrap(), want);
    }
}
