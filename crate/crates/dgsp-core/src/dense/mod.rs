// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Exact Lindblad dynamics on the full many-body Hilbert space of small chains.

mod evolve;
mod liouvillian;
mod operator;
mod oscillator;
mod sectors;
mod state;
mod system;

pub use evolve::{
    check_step, crossing_time, evolve_density, mixing_times, DensityTrajectory, EvolveOptions, MixingReport, Target,
    MANIFOLD_TOL, POSITIVITY_TOL, STEP_SAFETY,
};
pub use liouvillian::{liouvillian_gap, liouvillian_matrix, liouvillian_spectrum, unvectorize, vectorize, LIOUVILLIAN_CAP};
pub use operator::{Operator, SparseMatrix, SPARSE_DENSITY};
pub use oscillator::{heisenberg_decay_check, oscillator_norm, site_delta, site_diagonal, site_offdiagonal, HeisenbergDecay};
pub use sectors::{
    Sector, SectorBasis, SectorLindblad, SectorState, SectorTrajectory, SymmetryBasis, Transition, SECTOR_STEP_SAFETY,
};
pub use state::{fidelity, fidelity_pure, trace_distance, DensityMatrix, DENSE_CAP};
pub use system::{
    build_jump_exact, build_jump_quadrature, ground_manifold_from_eigen, lindblad_rhs, DenseLindbladSystem,
    JUMP_DROP_TOL,
};

#[cfg(test)]
mod tests;
