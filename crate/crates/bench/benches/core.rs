use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadnorm_bench::{radicals, SEMIPRIMES};
use quadnorm_core::arith::factorize;
use quadnorm_core::criterion::{supports, supports_exact};
use quadnorm_core::survey::{survey_partial, SurveyOptions};
use quadnorm_core::{fundamental_unit, Field};

fn units(c: &mut Criterion) {
    let mut group = c.benchmark_group("fundamental_unit");
    for r in radicals() {
        group.bench_with_input(BenchmarkId::from_parameter(r.get()), &r, |b, r| {
            b.iter(|| fundamental_unit(black_box(r)))
        });
    }
    group.finish();
}

fn support_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("supports");
    for r in radicals() {
        group.bench_with_input(BenchmarkId::new("residues", r.get()), &r, |b, r| {
            b.iter(|| supports(black_box(r)))
        });
        group.bench_with_input(BenchmarkId::new("exact", r.get()), &r, |b, r| {
            b.iter(|| supports_exact(black_box(r)))
        });
    }
    group.finish();
}

fn factoring(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorize");
    for n in SEMIPRIMES {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| factorize(black_box(n)))
        });
    }
    group.finish();
}

fn principal_cycle(c: &mut Criterion) {
    let mut group = c.benchmark_group("principal_cycle");
    for r in radicals() {
        group.bench_with_input(BenchmarkId::from_parameter(r.get()), &r, |b, r| {
            // a fresh field each time so the cycle is rebuilt
            b.iter(|| Field::new(r.clone()).principal_cycle_len())
        });
    }
    group.finish();
}

fn surveys(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey");
    group.sample_size(10);
    group.bench_function("partial_1e5", |b| {
        b.iter(|| survey_partial(2, black_box(100_000), &SurveyOptions::default()))
    });
    group.finish();
}

criterion_group!(benches, units, support_routes, factoring, principal_cycle, surveys);
criterion_main!(benches);
