use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use einstab_bench::{fixtures, stiefel};
use einstab_core::aloff_wallach::{aw_isotropy, aw_scalar, AWMetric};
use einstab_core::homspace::{grad_hess, ricci_blocks, scalar_curvature};
use std::hint::black_box;

fn generic_curvature(c: &mut Criterion) {
    let mut group = c.benchmark_group("generic");
    for f in fixtures() {
        group.bench_with_input(BenchmarkId::new("scalar", &f.name), &f, |b, f| {
            b.iter(|| scalar_curvature(black_box(&f.data), black_box(&f.metric)))
        });
        group.bench_with_input(BenchmarkId::new("ricci", &f.name), &f, |b, f| {
            b.iter(|| ricci_blocks(black_box(&f.data), black_box(&f.metric)))
        });
        group.bench_with_input(BenchmarkId::new("grad-hess", &f.name), &f, |b, f| {
            b.iter(|| grad_hess(black_box(&f.data), black_box(&f.metric)))
        });
    }
    group.finish();
}

fn closed_form_against_generic(c: &mut Criterion) {
    let m = AWMetric::new(1.0, 1.3, 0.7, 0.9, 1, 4).unwrap();
    let data = aw_isotropy(1, 4).unwrap();
    let diag = m.to_diagonal();
    let mut group = c.benchmark_group("aloff-wallach(1,4) scalar");
    group.bench_function("closed form", |b| b.iter(|| aw_scalar(black_box(&m))));
    group.bench_function("structure constants", |b| {
        b.iter(|| scalar_curvature(black_box(&data), black_box(&diag)))
    });
    group.finish();
}

fn structure_constants(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure constants");
    group.sample_size(20);
    group.bench_function("aloff-wallach(2,7)", |b| b.iter(|| aw_isotropy(black_box(2), black_box(7)).unwrap()));
    for n in [3, 5, 8] {
        group.bench_with_input(BenchmarkId::new("stiefel", n), &n, |b, &n| b.iter(|| stiefel(black_box(n))));
    }
    group.finish();
}

criterion_group!(benches, generic_curvature, closed_form_against_generic, structure_constants);
criterion_main!(benches);
