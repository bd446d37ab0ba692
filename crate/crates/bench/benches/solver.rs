use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rlfrac_bench::{relaxation_problem, spec, three_term_problem, FIVE_TERM, THREE_TERM};
use rlfrac_core::{analyze, gamma, mittag_leffler, solve_volterra};

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_volterra");
    group.sample_size(10);
    let relaxation = relaxation_problem();
    let three_term = three_term_problem();
    for n in [1024usize, 4096] {
        group.bench_with_input(BenchmarkId::new("relaxation", n), &n, |b, &n| {
            b.iter(|| solve_volterra(black_box(&relaxation), n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("three_term", n), &n, |b, &n| {
            b.iter(|| solve_volterra(black_box(&three_term), n).unwrap())
        });
    }
    group.finish();
}

fn special_functions(c: &mut Criterion) {
    c.bench_function("gamma", |b| b.iter(|| gamma(black_box(7.0 / 3.0)).unwrap()));
    c.bench_function("mittag_leffler/series", |b| {
        b.iter(|| mittag_leffler(0.5, 0.5, black_box(-1.0)).unwrap())
    });
    c.bench_function("mittag_leffler/integral", |b| {
        b.iter(|| mittag_leffler(0.5, 0.5, black_box(-20.0)).unwrap())
    });
}

fn analysis(c: &mut Criterion) {
    let three = spec(THREE_TERM);
    let five = spec(FIVE_TERM);
    c.bench_function("analyze/three_term", |b| {
        b.iter(|| analyze(black_box(&three)))
    });
    c.bench_function("analyze/five_term", |b| {
        b.iter(|| analyze(black_box(&five)))
    });
}

criterion_group!(benches, solve, special_functions, analysis);
criterion_main!(benches);
