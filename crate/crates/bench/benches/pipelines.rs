use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use einstab_bench::{config, nikonorov};
use einstab_core::aloff_wallach::{aw_instability_report, Branch};
use einstab_core::homspace::find_einstein;
use einstab_core::nikonorov::nik_solve;
use einstab_core::spectra::{case_study, CaseId, GroupScale, RootType};
use einstab_core::stiefel::stiefel_instability;
use std::hint::black_box;

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    for (p, q) in [(0, 1), (1, 4), (3, 11)] {
        for branch in Branch::ALL {
            group.bench_function(format!("aloff-wallach({p},{q}) {branch}"), |b| {
                b.iter(|| aw_instability_report(black_box(p), black_box(q), branch).unwrap())
            });
        }
    }
    for n in [3, 10, 50] {
        group.bench_with_input(BenchmarkId::new("stiefel", n), &n, |b, &n| {
            b.iter(|| stiefel_instability(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    group.sample_size(20);
    let f = nikonorov();
    group.bench_function("nikonorov generic Newton", |b| b.iter(|| find_einstein(&f.data, &f.metric)));
    group.bench_function("nikonorov both solutions", |b| b.iter(|| nik_solve().unwrap()));
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectra");
    group.sample_size(20);
    for kind in [RootType::E7, RootType::A(20), RootType::D(20)] {
        group.bench_function(format!("root system {kind}"), |b| b.iter(|| GroupScale::new(black_box(kind)).unwrap()));
    }
    for id in [CaseId::TripleS3, CaseId::Hyperquadric(10), CaseId::E7, CaseId::SpSu(10)] {
        group.bench_function(id.to_string(), |b| b.iter(|| case_study(black_box(id)).unwrap()));
    }
    group.finish();
}

fn cli(c: &mut Criterion) {
    let mut group = c.benchmark_group("cli");
    group.sample_size(10);
    let sweep = config(&[("command", "sweep"), ("space", "aw"), ("range", "1..20")]);
    group.bench_function("aloff-wallach sweep", |b| b.iter(|| einstab_cli::run(black_box(&sweep))));
    let report = config(&[("command", "report")]);
    group.bench_function("full report", |b| b.iter(|| einstab_cli::run(black_box(&report))));
    group.finish();
}

criterion_group!(benches, certificates, solvers, spectra, cli);
criterion_main!(benches);
