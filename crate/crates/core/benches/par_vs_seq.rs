use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use obstruction_core::cohomology::CochainSpace;
use obstruction_core::corpus;
use obstruction_core::defect::{verify_batch, DefectConfiguration, FibrationProfile, SurfaceDefect};
use obstruction_core::exec::Execution;
use obstruction_core::linalg::Coefficient;
use obstruction_core::operations::{cup_with, steenrod_sq_with};

const POLICIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn cochain_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("cochain_products");
    let rp4 = CochainSpace::new(corpus::space("rp4").unwrap(), Coefficient::Z2);
    let x = rp4.generator(1, 0).unwrap();
    let x2 = cup_with(&x, &x, Execution::Sequential).unwrap();
    let thom = corpus::thom_model("thom_w2_0").unwrap();
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::new("rp4_cup_x2_x2", name), &exec, |b, &e| {
            b.iter(|| cup_with(black_box(&x2), black_box(&x2), e).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rp4_sq2_x2", name), &exec, |b, &e| {
            b.iter(|| steenrod_sq_with(2, black_box(&x2), e).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("s2xs4_sq2_thom", name), &exec, |b, &e| {
            b.iter(|| steenrod_sq_with(2, black_box(thom.tau()), e).unwrap())
        });
    }
    group.finish();
}

fn scenario_batches(c: &mut Criterion) {
    let configs: Vec<DefectConfiguration> = (0..2000i64)
        .map(|i| {
            let surfaces = (0..8)
                .map(|j| {
                    let (n, chi) = ((i + j) % 5 - 2, (i * j) % 7 - 3);
                    SurfaceDefect::hopf(format!("s{j}"), n, chi, vec![n * n * chi])
                })
                .collect();
            DefectConfiguration::new(FibrationProfile::hopf(None), surfaces)
        })
        .map(|c| {
            let total = c.surfaces.iter().map(|s| s.n * s.n * s.chi.unwrap()).sum();
            c.with_c1_squared(total)
        })
        .collect();
    let mut group = c.benchmark_group("verify_batch");
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::new("2000_configs", name), &exec, |b, &e| {
            b.iter(|| verify_batch(black_box(&configs), e))
        });
    }
    group.finish();
}

fn corpus_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("corpus_check");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::new("all_entries", name), &exec, |b, &e| b.iter(|| corpus::check_all(e)));
    }
    group.finish();
}

criterion_group!(benches, cochain_products, scenario_batches, corpus_check);
criterion_main!(benches);
