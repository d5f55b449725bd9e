use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ringgroom::approx::{algorithm_a, algorithm_a_with};
use ringgroom::bounds::best_lower_bound;
use ringgroom::exact::{oracle_optimum, prop2_solve};
use ringgroom::fixtures;
use ringgroom::ilp::{build_ilp, export_lp_text};
use ringgroom::model::{all_pairs, uniform_instance, Pair};
use ringgroom::ringload::ring_fit_feasible;

fn approximation(c: &mut Criterion) {
    let design = fixtures::kirkman15_design();
    c.bench_function("algorithm_a n=15 c=1 d=1", |b| b.iter(|| algorithm_a(black_box(15), 1, 1)));
    c.bench_function("algorithm_a n=15 with design", |b| {
        b.iter(|| algorithm_a_with(black_box(15), 1, 1, Some(&design)))
    });
    c.bench_function("algorithm_a n=40 c=16 d=1", |b| b.iter(|| algorithm_a(black_box(40), 16, 1)));
}

fn bounds(c: &mut Criterion) {
    let inst = uniform_instance(101, 50, 1).unwrap();
    c.bench_function("best_lower_bound n=101", |b| b.iter(|| best_lower_bound(black_box(&inst))));
}

fn exact(c: &mut Criterion) {
    let nine = fixtures::nine_vertex_instance();
    let small = uniform_instance(5, 2, 1).unwrap();
    c.bench_function("prop2 nine-vertex", |b| b.iter(|| prop2_solve(black_box(&nine))));
    c.bench_function("oracle nine-vertex", |b| b.iter(|| oracle_optimum(black_box(&nine))));
    c.bench_function("prop2 uniform n=5 c=2", |b| b.iter(|| prop2_solve(black_box(&small))));
    c.bench_function("oracle uniform n=5 c=2", |b| b.iter(|| oracle_optimum(black_box(&small))));
}

fn ring_loading(c: &mut Criterion) {
    let demands: std::collections::BTreeMap<Pair, u32> = all_pairs(7).map(|p| (p, 1)).collect();
    c.bench_function("ring_fit all pairs n=7 c=7", |b| {
        b.iter(|| ring_fit_feasible(7, black_box(7), &demands))
    });
}

fn ilp(c: &mut Criterion) {
    let inst = fixtures::nine_vertex_instance();
    c.bench_function("export lp nine-vertex with cuts", |b| {
        b.iter(|| export_lp_text(&build_ilp(black_box(&inst), None, true)))
    });
}

criterion_group!(benches, approximation, bounds, exact, ring_loading, ilp);
criterion_main!(benches);
