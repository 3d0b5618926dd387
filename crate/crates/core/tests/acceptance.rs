//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use igtn_core::pipeline::{
    coxeter_square_braid, coxeter_square_commute, coxeter_square_involution, descent_reduction, replay,
};
use igtn_core::square::{brute_force_evidence, singular_square_labels, SquareIndex};
use igtn_core::transformation::all_idempotents;
use igtn_core::verify::factorial;
use igtn_core::*;

type Outcome = std::result::Result<String, String>;

fn part(s: &str) -> Partition {
    s.parse().expect("partition literal")
}

fn set(n: usize, xs: &[u8]) -> Subset {
    Subset::new(n, xs).expect("subset literal")
}

fn perm(s: &str, r: usize) -> Permutation {
    Permutation::parse(s, r).expect("permutation literal")
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> std::result::Result<(), String> {
    ensure(t.elapsed() < limit, format!("took {:?}, limit {limit:?}", t.elapsed()))
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn counts() -> Outcome {
    let t = Instant::now();
    let i = enumerate_partitions(7, 4).map_err(e)?.count();
    let j = enumerate_subsets(7, 4).map_err(e)?.count();
    let pairs = count_transversal_pairs(7, 4).map_err(e)?;
    ensure((i, j, pairs) == (350, 35, 2240), format!("got {i} / {j} / {pairs}"))?;
    within(t, Duration::from_secs(5))?;
    Ok(format!("|I| = {i}, |J| = {j}, pairs = {pairs}"))
}

fn label_golden() -> Outcome {
    let l = label(&part("{{1},{2,3,5},{4,7},{6}}"), &set(7, &[1, 4, 5, 6])).map_err(e)?;
    ensure(l == perm("(2 3)", 4), format!("got {l}"))?;
    Ok(format!("label = {l}"))
}

fn labels_of(sq: &Square) -> [Permutation; 4] {
    let l = sq.labels();
    [l.pa, l.pb, l.qa, l.qb]
}

fn singularity_golden() -> Outcome {
    let s = Square::new(
        part("{{1},{2,3,5},{4,7},{6}}"),
        part("{{1},{2,3,6},{4,7},{5}}"),
        set(7, &[1, 4, 5, 6]),
        set(7, &[1, 5, 6, 7]),
    )
    .map_err(e)?;
    let want = ["(2 3)", "(3 4)", "(2 4 3)", "(2 3 4)"].map(|x| perm(x, 4));
    ensure(labels_of(&s) == want, format!("running square labels {:?}", labels_of(&s)))?;
    ensure(is_singular_sq2(&s).map_err(e)? && is_singular_sq3(&s).map_err(e)?, "running square not singular")?;
    let t = Square::new(
        part("{{1},{2,4},{3,6},{5,7}}"),
        part("{{1},{2,6,7},{3,5},{4}}"),
        set(7, &[1, 3, 4, 7]),
        set(7, &[1, 4, 5, 6]),
    )
    .map_err(e)?;
    let want = ["(2 3)", "(3 4)", "(2 4 3)", "(2 4)"].map(|x| perm(x, 4));
    ensure(labels_of(&t) == want, format!("primed square labels {:?}", labels_of(&t)))?;
    ensure(!is_singular_sq2(&t).map_err(e)? && !is_singular_sq3(&t).map_err(e)?, "primed square singular")?;
    Ok("running square singular, primed square not".into())
}

fn three_tests_agree() -> Outcome {
    let t = Instant::now();
    let mut total = 0usize;
    let mut mismatches = 0usize;
    for n in 1..=6 {
        let ids = all_idempotents(n).map_err(e)?;
        for r in 1..=n {
            for sq in enumerate_squares(n, r).map_err(e)? {
                let sq1 = brute_force_evidence(&sq, &ids).kind != EvidenceKind::None;
                let sq2 = is_singular_sq2(&sq).map_err(e)?;
                let sq3 = is_singular_sq3(&sq).map_err(e)?;
                total += 1;
                mismatches += usize::from(sq1 != sq2 || sq2 != sq3);
            }
        }
    }
    ensure(mismatches == 0, format!("{mismatches} mismatches among {total} squares"))?;
    within(t, Duration::from_secs(600))?;
    Ok(format!("{total} squares, 0 mismatches"))
}

fn rectangular_bands() -> Outcome {
    let mut bands = 0usize;
    for n in 1..=5 {
        for r in 1..=n {
            for sq in enumerate_squares(n, r).map_err(e)? {
                if is_rectangular_band(&sq).map_err(e)? {
                    bands += 1;
                    ensure(is_singular_sq2(&sq).map_err(e)?, format!("band {sq:?} is not singular"))?;
                }
            }
        }
    }
    Ok(format!("{bands} rectangular bands, all singular"))
}

fn schreier_invariants() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=7 {
        for r in 1..=n {
            let sys = build_schreier(n, r).map_err(e)?;
            for (a, rho) in &sys.rho {
                let f = eval_word(rho, n).map_err(e)?;
                let g = eval_word(sys.rho_prime(a), n).map_err(e)?;
                for (i, x) in a.iter().enumerate() {
                    let i = i as u8 + 1;
                    ensure(f.apply(i) == x, format!("ρ_{a} is not order preserving at {i}"))?;
                    ensure(g.apply(x) == i, format!("ρ'_{a} does not invert ρ_{a} at {x}"))?;
                }
                for k in 0..rho.len() {
                    ensure(sys.subset_with_word(&rho[..k]).is_some(), format!("prefix {k} of ρ_{a} is no ρ_B"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} representatives"))
}

fn label_graphs() -> Outcome {
    let g = label_graph(&perm("(2 3)(4 5)", 5), 7, 5).map_err(e)?;
    let want = vec![
        (part("{{1},{2,4},{3},{5,7},{6}}"), set(7, &[1, 3, 4, 6, 7])),
        (part("{{1},{2,5},{3},{4,7},{6}}"), set(7, &[1, 3, 5, 6, 7])),
    ];
    let mut got = g.vertices.clone();
    got.sort();
    ensure(got == want, format!("vertices {got:?}"))?;
    ensure(g.edge_count() == 0, format!("{} edges", g.edge_count()))?;
    let mut cycles = 0;
    for k in 1..5 {
        for l in 1..=5 - k {
            let xi = contiguous_cycle(k, l, 5).map_err(e)?;
            ensure(label_graph(&xi, 7, 5).map_err(e)?.is_connected(), format!("G({xi}) disconnected"))?;
            cycles += 1;
        }
    }
    Ok(format!("(2 3)(4 5): 2 vertices, 0 edges; {cycles} contiguous cycles connected"))
}

fn singular_label_count() -> Outcome {
    let (any, proper) = singular_square_labels(7, 5).map_err(e)?;
    let msg = format!("any-vertex {} of 120, proper squares only {} of 120", any.len(), proper.len());
    ensure(any.len() == 46 || proper.len() == 46, msg.clone())?;
    Ok(msg)
}

fn not_in_place() -> Outcome {
    let q = part("{{1,4,5,7},{2},{3},{6}}");
    let b = set(7, &[2, 3, 6, 7]);
    let l = label(&q, &b).map_err(e)?;
    ensure(l == perm("(4 3 2 1)", 4), format!("λ(Q,B) = {l}"))?;
    let (c321, c12) = (perm("(3 2 1)", 4), perm("(1 2)", 4));
    let mut cycle_split_like = 0;
    let mut hits = Vec::new();
    for sq in enumerate_singular_squares(7, 4).map_err(e)? {
        if sq.q != q || sq.b != b || sq.p == q {
            continue;
        }
        let [pa, pb, qa, _] = labels_of(&sq);
        if pa.is_identity() && [pb, qa] == [c321, c12] || pa.is_identity() && [pb, qa] == [c12, c321] {
            cycle_split_like += 1;
        }
        if [pb, qa] == [c321, c12] || [pb, qa] == [c12, c321] {
            hits.push((sq.p, sq.a, pa));
        }
    }
    ensure(cycle_split_like == 0, format!("{cycle_split_like} squares eliminate f_(Q,B) in place"))?;
    let want = (part("{{1,3},{2},{4,6},{5,7}}"), set(7, &[2, 3, 5, 6]), perm("(1 2)(3 4)", 4));
    ensure(hits == vec![want], format!("squares with labels (3 2 1), (1 2): {hits:?}"))?;
    Ok(format!("no in-place square; unique partner with fourth label {}", want.2))
}

fn descent_golden() -> Outcome {
    let p = part("{{1,7},{2,5},{3,6},{4}}");
    let a = set(7, &[4, 5, 6, 7]);
    let d = descent_reduction(&p, &a).map_err(e)?;
    ensure(d.square.q == part("{{1,3,7},{2,5},{4},{6}}"), format!("Q = {}", d.square.q))?;
    ensure(d.square.b == set(7, &[1, 2, 4, 6]), format!("B = {}", d.square.b))?;
    let [_, pb, qa, qb] = labels_of(&d.square);
    ensure(pb == perm("(4 3)", 4), format!("λ(P,B) = {pb}"))?;
    ensure(qa == perm("[4,2,1,3]", 4), format!("λ(Q,A) = {qa}"))?;
    ensure(qb.is_identity(), format!("λ(Q,B) = {qb}"))?;
    Ok(format!("B = {}, Q = {}", d.square.b, d.square.q))
}

fn check_square(sq: &Square, want: [&str; 4], r: usize) -> std::result::Result<(), String> {
    let want = want.map(|x| perm(x, r));
    ensure(labels_of(sq) == want, format!("{sq:?} has labels {:?}", labels_of(sq)))?;
    ensure(
        is_singular_sq2(sq).map_err(e)? && is_singular_sq3(sq).map_err(e)?,
        format!("{sq:?} is not singular"),
    )
}

fn coxeter_golden() -> Outcome {
    let inv = coxeter_square_involution(2, 7, 4).map_err(e)?;
    let want = Square::new(
        part("{{1,7},{2,4},{3,5},{6}}"),
        part("{{1,2,7},{3,5},{4},{6}}"),
        set(7, &[1, 3, 4, 6]),
        set(7, &[1, 4, 5, 6]),
    )
    .map_err(e)?;
    ensure(inv == want, format!("involution square {inv:?}"))?;
    check_square(&inv, ["(2 3)", "()", "()", "(2 3)"], 4)?;

    let (s1, s2) = coxeter_square_commute(1, 3, 7, 4).map_err(e)?;
    let (p, q, rr) = (
        part("{{1,3,4,7},{2},{5},{6}}"),
        part("{{1,3,7},{2},{4,6},{5}}"),
        part("{{1,2,7},{3},{4,6},{5}}"),
    );
    let (a, b, c) = (set(7, &[1, 2, 5, 6]), set(7, &[2, 3, 5, 6]), set(7, &[2, 3, 4, 5]));
    ensure(s1 == Square::new(p, q, a, b).map_err(e)?, format!("first commute square {s1:?}"))?;
    ensure(s2 == Square::new(q, rr, b, c).map_err(e)?, format!("second commute square {s2:?}"))?;
    check_square(&s1, ["()", "(1 2)", "(3 4)", "(1 2)(3 4)"], 4)?;
    check_square(&s2, ["(1 2)(3 4)", "(1 2)", "(3 4)", "()"], 4)?;

    let br = coxeter_square_braid(2, 7, 4).map_err(e)?;
    let want = Square::new(
        part("{{1,7},{2,3,6},{4},{5}}"),
        part("{{1,7},{2,6},{3,5},{4}}"),
        set(7, &[1, 2, 4, 5]),
        set(7, &[1, 4, 5, 6]),
    )
    .map_err(e)?;
    ensure(br == want, format!("braid square {br:?}"))?;
    check_square(&br, ["()", "(4 3 2)", "(3 4)", "(2 4)"], 4)?;
    Ok("involution, commute and braid squares match".into())
}

const DESK: [(usize, usize); 8] = [(3, 1), (4, 2), (5, 2), (5, 3), (6, 3), (6, 4), (7, 4), (7, 5)];
const ORACLE_BUDGET: usize = 50_000;

fn theorem() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (n, r) in DESK {
        let v = verify_theorem(
            n,
            r,
            VerifyBudget {
                coset_oracle: true,
                max_cosets: ORACLE_BUDGET,
            },
        )
        .map_err(e)?;
        ensure(v.pipeline && v.homomorphism, format!("({n},{r}): {v:?}"))?;
        ensure(v.confirmed(), format!("({n},{r}): {}", v.verdict))?;
        match v.coset_order {
            Some(k) => ensure(k == factorial(r), format!("({n},{r}): coset order {k}"))?,
            None => notes.push(format!("({n},{r}) oracle inconclusive")),
        }
    }
    within(t, Duration::from_secs(1800))?;
    if notes.is_empty() {
        Ok(format!("all {} cases confirmed, coset oracle returns r! throughout", DESK.len()))
    } else {
        Ok(format!("all {} cases confirmed; {}", DESK.len(), notes.join(", ")))
    }
}

fn boundary() -> Outcome {
    for n in 2..=7 {
        let c = SquareIndex::new(n, n - 1).map_err(e)?.count_singular();
        ensure(c.proper == 0, format!("n = {n}: {} proper singular squares", c.proper))?;
    }
    Ok("no proper singular squares for r = n-1, n ≤ 7".into())
}

fn replays() -> Outcome {
    let mut steps = 0;
    for (n, r) in DESK {
        let (_, log) = run_pipeline(n, r).map_err(e)?;
        let rep = replay(&log);
        ensure(rep.is_ok(), format!("({n},{r}): {:?}", rep.failures.first()))?;
        steps += rep.steps_checked;
    }
    Ok(format!("{steps} steps replayed, 0 failures"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("counts at (7,4)", counts),
        ("label golden test", label_golden),
        ("singularity golden tests", singularity_golden),
        ("three singularity tests agree, n ≤ 6", three_tests_agree),
        ("rectangular bands are singular, n ≤ 5", rectangular_bands),
        ("Schreier invariants, n ≤ 7", schreier_invariants),
        ("label graphs at (7,5)", label_graphs),
        ("labels of singular squares at (7,5)", singular_label_count),
        ("no in-place elimination at (7,4)", not_in_place),
        ("descent reduction golden test", descent_golden),
        ("Coxeter relation squares", coxeter_golden),
        ("theorem confirmed at desk scale", theorem),
        ("boundary regime r = n-1", boundary),
        ("derivation logs replay", replays),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{ms} ms]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{ms} ms]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
