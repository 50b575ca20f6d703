// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Spin-chain models in Pauli form and their quadratic Majorana representation.

mod couplings;
mod majorana;
mod models;
mod pauli;
mod periodized;

pub use couplings::CouplingPreset;
pub use majorana::{coupling_vector, jordan_wigner, pauli_to_majorana, MajoranaMonomial, MajoranaQuadratic, QuasiParticles};
pub use models::{
    build_annni, build_cluster, build_heisenberg_field, build_random_tfim, build_tfim, build_uniform_field,
    random_fields, Boundary,
};
pub use pauli::{pauli_matrix, Pauli, PauliString, SpinHamiltonian, DEFAULT_DENSE_CAP};
pub use periodized::{periodized_h, periodized_tfim_modes, PeriodizedTfimModes};
