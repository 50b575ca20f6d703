// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Non-Hermitian quasiparticle Hamiltonian `h_nh = i·diag(2λ) − ½ΣΦΦ†`, its gap,
//! the eigenvector conditioning `κ(V)`, and the resulting mixing-time bound.

use ndarray::{Array1, Array2};

use super::jumps::LinearJump;
use crate::error::{Error, Result};
use crate::hamiltonians::{periodized_tfim_modes, MajoranaQuadratic, PeriodizedTfimModes};
use crate::linalg::{condition_number, eig, normalize_columns, CMat, C64};

/// Conditioning above which the eigenvector matrix is treated as defective.
pub const DEFECTIVE_KAPPA: f64 = 1e12;
/// Conditioning above which no mixing bound is reported.
pub const BOUND_KAPPA: f64 = 1e6;

#[derive(Clone, Debug)]
pub struct NonHermitianSummary {
    pub h_nh: CMat,
    pub eigvals: Array1<C64>,
    /// `−max Re D_ii`.
    pub gap: f64,
    pub kappa_v: f64,
    pub diagonalizable: bool,
    /// Largest creation-operator component dropped from the jumps.
    pub creation_residue: f64,
}

fn summarize(h_nh: CMat, creation_residue: f64) -> Result<NonHermitianSummary> {
    let (eigvals, mut v) = eig(&h_nh)?;
    normalize_columns(&mut v);
    let kappa_v = condition_number(&v)?;
    let gap = -eigvals.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    Ok(NonHermitianSummary {
        h_nh,
        eigvals,
        gap,
        kappa_v,
        diagonalizable: kappa_v < DEFECTIVE_KAPPA,
        creation_residue,
    })
}

/// `h_nh` from a quadratic Hamiltonian and linear jumps, in the quasiparticle basis.
///
/// With `b_k = Σ_p u*_kp w_p`, a jump `Σ_p ζ_p w_p` has annihilation part
/// `φ_k = Σ_p ζ_p u_kp` and creation part `Σ_p ζ_p u*_kp`; the latter is
/// dropped here and its size is reported.
pub fn nonhermitian_summary(h: &MajoranaQuadratic, jumps: &[LinearJump]) -> Result<NonHermitianSummary> {
    let qp = h.quasiparticles()?;
    let n = h.n_modes;
    let mut hnh = CMat::zeros((n, n));
    for k in 0..n {
        hnh[[k, k]] = C64::new(0.0, 2.0 * qp.lambdas[k]);
    }
    let mut residue: f64 = 0.0;
    for j in jumps {
        if j.zeta.len() != 2 * n {
            return Err(Error::Shape(format!("jump `{}` has the wrong length", j.label)));
        }
        let phi = qp.modes.t().dot(&j.zeta);
        let cre = qp.modes.t().mapv(|z| z.conj()).dot(&j.zeta);
        residue = residue.max(cre.iter().map(|z| z.norm()).fold(0.0, f64::max));
        for k in 0..n {
            for l in 0..n {
                hnh[[k, l]] -= 0.5 * phi[k].conj() * phi[l];
            }
        }
    }
    summarize(hnh, residue)
}

/// `h_nh = i·diag(2Λ_k) − ½φ₁φ₁ᵀ − ½ψ₁ψ₁ᵀ` for boundary couplings `{X_1, Y_1}`.
pub fn nonhermitian_summary_modes(modes: &PeriodizedTfimModes) -> Result<NonHermitianSummary> {
    let n = modes.n;
    let phi = modes.phi.column(0);
    let psi = modes.psi.column(0);
    let hnh = Array2::from_shape_fn((n, n), |(k, l)| {
        let diag = if k == l { C64::new(0.0, 2.0 * modes.lambdas[k]) } else { C64::new(0.0, 0.0) };
        diag - 0.5 * (phi[k] * phi[l] + psi[k] * psi[l])
    });
    summarize(hnh, 0.0)
}

/// `τ = Δ⁻¹ ln(κ(V)·√N / η)`.
pub fn mixing_bound(summary: &NonHermitianSummary, n_modes: usize, eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidArgument(format!("eta must lie in (0, 1), got {eta}")));
    }
    if summary.gap <= 0.0 {
        return Err(Error::NoBound(format!("non-Hermitian gap {:.3e} is not positive", summary.gap)));
    }
    if summary.kappa_v > BOUND_KAPPA {
        return Err(Error::NoBound(format!("κ(V) = {:.3e} is too large to trust", summary.kappa_v)));
    }
    Ok((summary.kappa_v * (n_modes as f64).sqrt() / eta).ln() / summary.gap)
}

#[derive(Clone, Debug)]
pub struct PerturbativeGap {
    /// `½ min_{0<k<N/2} λ_min(M_k)`.
    pub gap: f64,
    /// First-order rate `(φ²+ψ²)/2` of the nondegenerate `k = 0` mode.
    pub k0_rate: f64,
    /// Same for `k = −N/2`.
    pub k_half_rate: f64,
    /// `(k, det M_k, 4ξ² sin²(2πk/N)/(N²Λ_k²))`.
    pub determinants: Vec<(i64, f64, f64)>,
}

/// First-order perturbative estimate of the non-Hermitian gap of the periodized chain.
pub fn perturbative_gap_tfim(n: usize, xi: f64) -> Result<PerturbativeGap> {
    let m = periodized_tfim_modes(n, xi)?;
    let f1 = |k: i64| m.phi[[m.row_of_k(k), 0]];
    let p1 = |k: i64| m.psi[[m.row_of_k(k), 0]];
    let half = (n / 2) as i64;
    let mut gap = f64::INFINITY;
    let mut dets = Vec::new();
    for k in 1..half {
        let a = f1(k).powi(2) + p1(k).powi(2);
        let c = f1(-k).powi(2) + p1(-k).powi(2);
        let b = f1(k) * f1(-k) + p1(k) * p1(-k);
        let det = a * c - b * b;
        let tr = a + c;
        let lmin = 0.5 * (tr - ((a - c).powi(2) + 4.0 * b * b).sqrt());
        gap = gap.min(0.5 * lmin);
        let th = m.theta(k);
        let formula = 4.0 * xi * xi * th.sin().powi(2) / ((n * n) as f64 * m.lambdas[m.row_of_k(k)].powi(2));
        dets.push((k, det, formula));
    }
    let rate = |k: i64| 0.5 * (f1(k).powi(2) + p1(k).powi(2));
    Ok(PerturbativeGap { gap, k0_rate: rate(0), k_half_rate: rate(-half), determinants: dets })
}
