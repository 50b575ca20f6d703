// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Quasi-free Lindblad dynamics: quadratic Hamiltonians with jumps linear in Majoranas.

mod covariance;
mod jumps;
mod nonherm;
mod sop;

pub use covariance::{
    build_generator, build_generator_with, effective_rapidity_gap, energy, evolve_covariance, jump_matrix,
    particle_number, rapidity_gap, steady_state, vacuum_covariance, vacuum_from_quasiparticles, CovarianceState,
    Integrator, Propagation, QuasiFreeGenerator, SpectralPropagator,
};
pub use crate::filter::FilterSource;
pub use jumps::{filtered_matrix, jump_coefficients, jumps_for_couplings, LinearJump};
pub use nonherm::{
    mixing_bound, nonhermitian_summary, nonhermitian_summary_modes, perturbative_gap_tfim, NonHermitianSummary,
    PerturbativeGap, BOUND_KAPPA, DEFECTIVE_KAPPA,
};
pub use sop::{sop, sop_indices, sop_sign};

#[cfg(test)]
mod tests;
