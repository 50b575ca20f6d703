// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dissipative ground-state preparation with engineered Lindblad dynamics.
//!
//! The crate provides spin-chain models and their Jordan–Wigner form, a
//! frequency filter for jump-operator synthesis, a covariance-matrix engine for
//! quasi-free dynamics, an exact dense Lindblad engine for small chains, and an
//! adiabatic-evolution baseline.

pub mod adiabatic;
pub mod dense;
pub mod error;
pub mod filter;
pub mod fit;
pub mod hamiltonians;
pub mod linalg;
pub mod quasifree;

pub use error::{Error, Result};
pub use linalg::{CMat, RMat, C64};
pub use hamiltonians::{Boundary, CouplingPreset, MajoranaQuadratic, Pauli, PauliString, SpinHamiltonian};
pub use filter::{FilterSource, FilterSpec};
