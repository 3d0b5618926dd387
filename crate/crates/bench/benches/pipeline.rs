use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use igtn_bench::DESK_CASES;
use igtn_core::square::SquareIndex;
use igtn_core::*;

fn counts(c: &mut Criterion) {
    c.bench_function("transversal_pairs_7_4", |b| b.iter(|| count_transversal_pairs(7, 4).unwrap()));
    c.bench_function("label_spectrum_7_4", |b| b.iter(|| label_spectrum(7, 4).unwrap()));
}

fn squares(c: &mut Criterion) {
    let mut g = c.benchmark_group("singular_squares");
    g.sample_size(10);
    for &(n, r) in &DESK_CASES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n}_{r}")), &(n, r), |b, &(n, r)| {
            b.iter(|| SquareIndex::new(n, r).unwrap().count_singular())
        });
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for &(n, r) in &DESK_CASES {
        g.bench_with_input(BenchmarkId::new("run", format!("{n}_{r}")), &(n, r), |b, &(n, r)| {
            b.iter(|| run_pipeline(n, r).unwrap())
        });
    }
    let (_, log) = run_pipeline(7, 4).unwrap();
    g.bench_function("replay_7_4", |b| b.iter(|| replay(&log)));
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracles");
    g.sample_size(10);
    let (pres, _) = build_presentation(6, 4).unwrap();
    g.bench_function("homomorphism_6_4", |b| b.iter(|| label_homomorphism_check(&pres).unwrap()));
    let simple = generic_tietze_simplify(&pres, TietzeLimits::default());
    g.bench_function("cosets_6_4", |b| b.iter(|| coset_enumerate(&simple, 50_000)));
    g.finish();
}

criterion_group!(benches, counts, squares, pipeline, oracles);
criterion_main!(benches);
