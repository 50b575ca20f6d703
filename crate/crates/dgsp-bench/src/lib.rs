// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Fixtures shared by the benchmarks.

use dgsp_core::dense::DenseLindbladSystem;
use dgsp_core::filter::{default_omega_max, design_filter};
use dgsp_core::hamiltonians::{build_tfim, jordan_wigner};
use dgsp_core::quasifree::{build_generator, jumps_for_couplings, QuasiFreeGenerator};
use dgsp_core::{Boundary, CouplingPreset, FilterSource, MajoranaQuadratic, RMat, SpinHamiltonian};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Open TFIM at `g = 1.5` with the exact filter of width `0.5`.
pub fn tfim(n: usize) -> (SpinHamiltonian, FilterSource) {
    let ham = build_tfim(n, 1.0, 1.5, Boundary::Open).expect("valid chain");
    let spec = design_filter(0.5, default_omega_max(ham.norm_bound())).expect("feasible filter");
    (ham, FilterSource::Exact(spec))
}

/// Quasi-free generator for the boundary-driven TFIM.
pub fn tfim_generator(n: usize) -> (MajoranaQuadratic, QuasiFreeGenerator) {
    let (ham, filter) = tfim(n);
    let h = jordan_wigner(&ham).expect("quadratic");
    let ops = CouplingPreset::Boundary.operators(n).expect("preset");
    let jumps = jumps_for_couplings(&h, &ops, &filter).expect("jumps");
    let gen = build_generator(&h, &jumps).expect("generator");
    (h, gen)
}

/// Dense Lindbladian for the TFIM with bulk couplings.
pub fn tfim_dense(n: usize) -> DenseLindbladSystem {
    let (ham, filter) = tfim(n);
    let ops = CouplingPreset::Bulk.operators(n).expect("preset");
    DenseLindbladSystem::new(&ham, &ops, &filter, true).expect("system")
}

/// Random real antisymmetric matrix of size `2m`.
pub fn random_antisymmetric(m: usize, seed: u64) -> RMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * m;
    let mut a = Array2::zeros((n, n));
    for i in 0..n {
        for j in i + 1..n {
            let x: f64 = rng.random_range(-1.0..1.0);
            a[[i, j]] = x;
            a[[j, i]] = -x;
        }
    }
    a
}
