// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form Bogoliubov modes of the periodized transverse-field chain (`g = 1`, `J = ξ`).

use std::f64::consts::PI;

use ndarray::{Array1, Array2};

use super::majorana::MajoranaQuadratic;
use crate::error::{Error, Result};
use crate::linalg::C64;

#[derive(Clone, Debug)]
pub struct PeriodizedTfimModes {
    pub n: usize,
    pub xi: f64,
    /// `Λ_k` for `k = −N/2 … N/2−1`; row `r` holds `k = r − N/2`.
    pub lambdas: Array1<f64>,
    /// Rows `φ_{k·}` over sites `j = 1 … N` (column `j − 1`).
    pub phi: Array2<f64>,
    pub psi: Array2<f64>,
}

impl PeriodizedTfimModes {
    pub fn k_of_row(&self, r: usize) -> i64 {
        r as i64 - (self.n / 2) as i64
    }

    pub fn row_of_k(&self, k: i64) -> usize {
        (k + (self.n / 2) as i64) as usize
    }

    pub fn theta(&self, k: i64) -> f64 {
        2.0 * PI * k as f64 / self.n as f64
    }
}

/// Mode energies and Nambu coefficients of the periodized chain.
///
/// The `k = 0` and `k = −N/2` rows use the normalization `1/√N` so that every
/// row of `φ` and `ψ` is a unit vector.
pub fn periodized_tfim_modes(n: usize, xi: f64) -> Result<PeriodizedTfimModes> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidSize(format!("periodized modes need an even N ≥ 2, got {n}")));
    }
    if (xi.abs() - 1.0).abs() < 1e-12 {
        return Err(Error::Gapless(format!("ξ = {xi} closes the gap")));
    }
    let half = (n / 2) as i64;
    let nf = n as f64;
    let lambda = |k: i64| {
        let th = 2.0 * PI * k as f64 / nf;
        (1.0 + xi * xi + 2.0 * xi * th.cos()).sqrt()
    };
    let phi_entry = |k: i64, j: usize| {
        let arg = 2.0 * PI * (j as f64) * (k as f64) / nf;
        if k >= 1 {
            (2.0 / nf).sqrt() * arg.sin()
        } else if k == 0 || k == -half {
            arg.cos() / nf.sqrt()
        } else {
            (2.0 / nf).sqrt() * arg.cos()
        }
    };
    let mut lambdas = Array1::zeros(n);
    let mut phi = Array2::zeros((n, n));
    for r in 0..n {
        let k = r as i64 - half;
        lambdas[r] = lambda(k);
        for j in 0..n {
            phi[[r, j]] = phi_entry(k, j + 1);
        }
    }
    let mut psi = Array2::zeros((n, n));
    for r in 0..n {
        let k = r as i64 - half;
        let th = 2.0 * PI * k as f64 / nf;
        let partner = -k;
        for j in 0..n {
            let cross = if partner < half { xi * th.sin() * phi_entry(partner, j + 1) } else { 0.0 };
            psi[[r, j]] = -((1.0 + xi * th.cos()) * phi[[r, j]] + cross) / lambdas[r];
        }
    }
    Ok(PeriodizedTfimModes { n, xi, lambdas, phi, psi })
}

/// Quadratic Majorana matrix of the periodized chain whose eigenvectors for `+Λ_k`
/// are `(φ_k, iψ_k)/√2`.
///
/// In this sign convention the hopping enters with coupling `−ξ`, i.e. the open
/// chain with `J = −ξ, g = 1` plus the wrap entry between `w_{2N−1}` and `w_0`.
pub fn periodized_h(n: usize, xi: f64) -> Result<MajoranaQuadratic> {
    if n < 2 {
        return Err(Error::InvalidSize("periodized chain needs N ≥ 2".into()));
    }
    let mut q = MajoranaQuadratic::zeros(n);
    let i = C64::new(0.0, 1.0);
    for j in 0..n {
        q.add_pair(j, j + n, i);
        q.add_pair(j + n, (j + 1) % n, -i * xi);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;

    #[test]
    fn edge_values_of_lambda() {
        let m = periodized_tfim_modes(8, 2.0 / 3.0).unwrap();
        assert!((m.lambdas[m.row_of_k(0)] - (1.0 + 2.0 / 3.0)).abs() < 1e-12);
        assert!((m.lambdas[m.row_of_k(-4)] - (1.0 - 2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn lambda_is_even_in_k() {
        let m = periodized_tfim_modes(12, 0.4).unwrap();
        for k in 1..6 {
            assert!((m.lambdas[m.row_of_k(k)] - m.lambdas[m.row_of_k(-k)]).abs() < 1e-12);
        }
    }

    #[test]
    fn rows_are_orthonormal() {
        let m = periodized_tfim_modes(16, 2.0 / 3.0).unwrap();
        for mat in [&m.phi, &m.psi] {
            let g = mat.dot(&mat.t());
            for a in 0..16 {
                for b in 0..16 {
                    let e = if a == b { 1.0 } else { 0.0 };
                    assert!((g[[a, b]] - e).abs() < 1e-10, "({a},{b}) {}", g[[a, b]]);
                }
            }
        }
    }

    #[test]
    fn lambdas_match_direct_diagonalization() {
        let (n, xi) = (8, 2.0 / 3.0);
        let m = periodized_tfim_modes(n, xi).unwrap();
        let q = periodized_h(n, xi).unwrap();
        let direct = eigvalsh(&q.h).unwrap();
        let mut expect: Vec<f64> = m.lambdas.to_vec();
        expect.sort_by(f64::total_cmp);
        for (a, b) in direct.iter().skip(n).zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn nambu_vectors_are_eigenvectors() {
        let (n, xi) = (10, 0.3);
        let m = periodized_tfim_modes(n, xi).unwrap();
        let q = periodized_h(n, xi).unwrap();
        for r in 0..n {
            let u: Array1<C64> = (0..2 * n)
                .map(|p| {
                    if p < n {
                        C64::new(m.phi[[r, p]], 0.0)
                    } else {
                        C64::new(0.0, m.psi[[r, p - n]])
                    }
                })
                .collect::<Array1<C64>>()
                .mapv(|z| z / 2f64.sqrt());
            let hu = q.h.dot(&u);
            let res = (&hu - &u.mapv(|z| z * m.lambdas[r])).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(res < 1e-12, "row {r}: residual {res}");
        }
    }

    #[test]
    fn gapless_and_odd_rejected() {
        assert!(matches!(periodized_tfim_modes(8, 1.0), Err(Error::Gapless(_))));
        assert!(periodized_tfim_modes(7, 0.5).is_err());
    }
}
