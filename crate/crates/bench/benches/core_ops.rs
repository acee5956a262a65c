use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use splitlab_bench::{peel_instance, tower_267, verified_266};
use splitlab_core::digraph::{out_core, VertexSet};
use splitlab_core::expander::{check_property_ii, union_bound_sum};
use splitlab_core::gadgets::{run_lift_fuzz, tower_gadget, TowerParams};
use splitlab_core::generators::{complete_digraph, paley_tournament};
use splitlab_core::solver::exists_split;
use splitlab_core::{Seed, SplitSpec};

fn bench_out_core(c: &mut Criterion) {
    let d = peel_instance();
    let full = VertexSet::full(d.n());
    c.bench_function("out_core n=2000 delta=8 s=5", |b| {
        b.iter(|| out_core(black_box(&d), black_box(&full), 5))
    });
}

fn bench_property_check(c: &mut Criterion) {
    let verified = verified_266();
    let (g, params) = (verified.graph().clone(), verified.params().clone());
    c.bench_function("check_property_ii n=266 k=3", |b| {
        b.iter(|| check_property_ii(black_box(&g), black_box(&params)).unwrap())
    });
}

fn bench_union_bound(c: &mut Criterion) {
    c.bench_function("union_bound_sum n=1000 k=3", |b| {
        b.iter(|| union_bound_sum(black_box(1000), black_box(3)).unwrap())
    });
}

fn bench_tower_build(c: &mut Criterion) {
    let base = complete_digraph(267).unwrap();
    let verified = verified_266();
    c.bench_function("tower_gadget base=K267 s=4 k=3", |b| {
        b.iter(|| {
            let params = TowerParams::new(4, verified.clone()).unwrap();
            tower_gadget(black_box(&base), &params).unwrap()
        })
    });
}

fn bench_lift_fuzz_trial(c: &mut Criterion) {
    let om = tower_267();
    c.bench_function("lift fuzz 10 trials on 71k-vertex tower", |b| {
        b.iter(|| run_lift_fuzz(black_box(&om), 3, 10, Seed(1)).unwrap())
    });
}

fn bench_solver(c: &mut Criterion) {
    let d = paley_tournament(11).unwrap();
    let spec = SplitSpec::new(1, 1).unwrap();
    c.bench_function("exists_split paley-11 (1,1)", |b| {
        b.iter(|| exists_split(black_box(&d), spec))
    });
}

criterion_group!(
    benches,
    bench_out_core,
    bench_property_check,
    bench_union_bound,
    bench_tower_build,
    bench_lift_fuzz_trial,
    bench_solver
);
criterion_main!(benches);
