use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kaug_bench::{open_instance, ratio_family};
use kaug_core::lp::solve_lpvc;
use kaug_core::outconnect::rooted;
use kaug_core::pipeline::{augment, PipelineOptions};
use kaug_core::rogue::compute_b;
use kaug_core::toolkit::oracle::exact_opt;
use kaug_core::NodeSet;

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for n in [10, 12, 14] {
        let inst = ratio_family(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| augment(&inst.graph, 2, &inst.costs, &PipelineOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn stages(c: &mut Criterion) {
    let inst = ratio_family(12, 2);
    let r: NodeSet = (0..2).collect();
    c.bench_function("rooted n12 k2", |b| b.iter(|| rooted(&inst.graph, &inst.costs, black_box(&r), 2).unwrap()));
    c.bench_function("cut lp n12 k2", |b| b.iter(|| solve_lpvc(&inst.graph, 2, &inst.costs).unwrap()));
    c.bench_function("exact n12 k2", |b| b.iter(|| exact_opt(&inst.graph, 2, &inst.costs).unwrap()));

    let mut group = c.benchmark_group("compute_b");
    for (n, k) in [(20, 2), (40, 2), (30, 3)] {
        let inst = open_instance(n, k, 3);
        group.bench_with_input(BenchmarkId::new(format!("k{k}"), n), &inst, |b, inst| {
            b.iter(|| compute_b(&inst.graph, k))
        });
    }
    group.finish();
}

criterion_group!(benches, pipeline, stages);
criterion_main!(benches);
