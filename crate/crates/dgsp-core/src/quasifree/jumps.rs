// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Jump operators that are linear in Majorana operators.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::filter::FilterSource;
use crate::hamiltonians::{coupling_vector, MajoranaQuadratic, PauliString};
use crate::linalg::{dagger, eigh, CMat, C64};

/// `K = Σ_p ζ_p w_p`.
#[derive(Clone, Debug)]
pub struct LinearJump {
    pub zeta: Array1<C64>,
    pub label: String,
}

/// `f̂(−2h)` through the eigendecomposition of `h`.
pub fn filtered_matrix(h: &MajoranaQuadratic, filter: &FilterSource) -> Result<CMat> {
    h.validate()?;
    let (vals, u) = eigh(&h.h)?;
    let f: Vec<C64> = vals.iter().map(|&l| filter.value(-2.0 * l)).collect();
    let mut scaled = u.clone();
    for (mut col, fk) in scaled.columns_mut().into_iter().zip(&f) {
        col.mapv_inplace(|z| z * fk);
    }
    Ok(scaled.dot(&dagger(&u)))
}

/// Coefficients `ζ = f̂(−2h)ᵀ u` of the jump built from coupling `A = Σ_a u_a w_a`.
pub fn jump_coefficients(
    h: &MajoranaQuadratic,
    coupling: &Array1<C64>,
    filter: &FilterSource,
    label: &str,
) -> Result<LinearJump> {
    if coupling.len() != 2 * h.n_modes {
        return Err(Error::Shape(format!(
            "coupling has length {}, expected {}",
            coupling.len(),
            2 * h.n_modes
        )));
    }
    let fm = filtered_matrix(h, filter)?;
    Ok(LinearJump { zeta: fm.t().dot(coupling), label: label.to_string() })
}

/// Jumps for a list of Pauli coupling operators, sharing one eigendecomposition.
pub fn jumps_for_couplings(
    h: &MajoranaQuadratic,
    couplings: &[PauliString],
    filter: &FilterSource,
) -> Result<Vec<LinearJump>> {
    let fm = filtered_matrix(h, filter)?;
    couplings
        .iter()
        .map(|c| {
            let u = coupling_vector(h.n_modes, c)?;
            Ok(LinearJump { zeta: fm.t().dot(&u), label: c.label() })
        })
        .collect()
}
