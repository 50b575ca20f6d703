// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dgsp_bench::{random_antisymmetric, tfim, tfim_dense, tfim_generator};
use dgsp_core::dense::DensityMatrix;
use dgsp_core::filter::{default_table, design_filter};
use dgsp_core::linalg::pfaffian;
use dgsp_core::quasifree::{evolve_covariance, rapidity_gap, CovarianceState, Integrator};

fn covariance(c: &mut Criterion) {
    let mut g = c.benchmark_group("covariance");
    for n in [20, 60] {
        let (_, gen) = tfim_generator(n);
        let g0 = CovarianceState::all_down(n);
        g.bench_with_input(BenchmarkId::new("exact_100_samples", n), &n, |b, _| {
            b.iter(|| evolve_covariance(&gen, &g0, 100.0, 1.0, Integrator::Exact, 1).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rk4_100_steps", n), &n, |b, _| {
            b.iter(|| evolve_covariance(&gen, &g0, 1.0, 0.01, Integrator::Rk4, 100).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rapidity_gap", n), &n, |b, _| b.iter(|| rapidity_gap(&gen).unwrap()));
    }
    g.finish();
}

fn dense(c: &mut Criterion) {
    let mut g = c.benchmark_group("dense_rhs");
    for n in [4, 6, 8] {
        let sys = tfim_dense(n);
        let rho = DensityMatrix::random_mixed(n, 1).rho;
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| sys.rhs(black_box(&rho))));
    }
    g.finish();
}

fn pfaffians(c: &mut Criterion) {
    let mut g = c.benchmark_group("pfaffian");
    for m in [10, 40, 100] {
        let a = random_antisymmetric(m, 7);
        g.bench_with_input(BenchmarkId::from_parameter(2 * m), &m, |b, _| b.iter(|| pfaffian(black_box(&a)).unwrap()));
    }
    g.finish();
}

fn filter(c: &mut Criterion) {
    let (ham, _) = tfim(20);
    let spec = design_filter(0.5, 2.0 * ham.norm_bound()).unwrap();
    c.bench_function("filter_table", |b| b.iter(|| default_table(black_box(&spec)).unwrap()));
}

criterion_group!(benches, covariance, dense, pfaffians, filter);
criterion_main!(benches);
