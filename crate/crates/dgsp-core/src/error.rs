// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by every engine in the crate.

use thiserror::Error;

/// Errors raised by model construction, filter design and the dynamics engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("term `{0}` is not quadratic in Majorana operators")]
    NotQuasiFree(String),
    #[error("gapless spectrum: {0}")]
    Gapless(String),
    #[error("infeasible filter passband: delta={delta} must be below omega_max/2={half}")]
    InfeasiblePassband { delta: f64, half: f64 },
    #[error("filter quadrature error {eps:.3e} exceeds tolerance {tol:.3e}; increase T or the node count")]
    Resolution { eps: f64, tol: f64 },
    #[error("malformed quadratic Hamiltonian: {0}")]
    MalformedHamiltonian(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent state: {0}")]
    InconsistentState(String),
    #[error("steady state is not unique: {0}")]
    NonUniqueSteadyState(String),
    #[error("step size too large: {0}")]
    StepSize(String),
    #[error("integrator failure: {0}")]
    Integrator(String),
    #[error("no mixing bound: {0}")]
    NoBound(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl Error {
    /// True for errors caused by bad input rather than numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidSize(_)
                | Error::InvalidArgument(_)
                | Error::NotQuasiFree(_)
                | Error::InfeasiblePassband { .. }
                | Error::Shape(_)
        )
    }
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
