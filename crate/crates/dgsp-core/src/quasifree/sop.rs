// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! String order parameter `S_ab = s_m X_a Z_{a+1} Z_{a+3} ⋯ Z_{b−1} X_b` of Gaussian states.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg::{pfaffian, RMat};

/// `s_m = (−1)^{m(m−1)/2}`.
pub fn sop_sign(m: usize) -> f64 {
    if (m * m.saturating_sub(1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Majorana indices `{a+2i}_{i=1..m}` followed by `{a+N+2(i−1)}_{i=1..m}`, `m = (b−a)/2`.
pub fn sop_indices(n_modes: usize, a: usize, b: usize) -> Result<Vec<usize>> {
    if b <= a || (b - a) % 2 == 1 {
        return Err(Error::InvalidArgument(format!("invalid span ({a}, {b}): b − a must be even and positive")));
    }
    if b >= n_modes {
        return Err(Error::InvalidArgument(format!("span end {b} outside a {n_modes}-site chain")));
    }
    let m = (b - a) / 2;
    let mut q: Vec<usize> = (1..=m).map(|i| a + 2 * i).collect();
    q.extend((1..=m).map(|i| a + n_modes + 2 * (i - 1)));
    Ok(q)
}

/// `⟨S_ab⟩ = Pf(2Γ|_q)`; the Jordan–Wigner sign `s_m` is part of `S_ab`.
pub fn sop(gamma: &RMat, a: usize, b: usize) -> Result<f64> {
    let n = gamma.nrows() / 2;
    let q = sop_indices(n, a, b)?;
    let sub = Array2::from_shape_fn((q.len(), q.len()), |(i, j)| 2.0 * gamma[[q[i], q[j]]]);
    pfaffian(&sub)
}
