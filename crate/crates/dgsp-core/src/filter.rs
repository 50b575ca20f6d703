// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Frequency filter `f̂(ω)` that keeps only energy-lowering transitions, and its
//! time-domain quadrature table.
//!
//! `f̂` is a plateau on `[−ω_max + Δ, −Δ]` joined to zero by `exp(−1/x)` smooth
//! steps of width `Δ`, so it vanishes on `ω ≥ 0` and on `ω ≤ −ω_max`.  The time
//! kernel is `f(s) = (1/2π) ∫ f̂(ω) e^{−iωs} dω`, and a table reproduces
//! `f̂(ν) ≈ Σ_j p_j f(s_j) e^{iνs_j}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{linear_fit, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterSpec {
    pub delta: f64,
    pub omega_max: f64,
    /// Interval `[a, b]` on which `f̂ ≡ 1`.
    pub passband: (f64, f64),
    /// Widths of the rising (near 0) and falling (near −ω_max) windows.
    pub rise_width: f64,
    pub fall_width: f64,
}

/// C^∞ step from 0 at `x ≤ 0` to 1 at `x ≥ 1`.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

/// Filter with passband `[−ω_max + Δ, −Δ]`.
pub fn design_filter(delta: f64, omega_max: f64) -> Result<FilterSpec> {
    if !(delta > 0.0 && omega_max > delta && omega_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < delta < omega_max, got delta={delta}, omega_max={omega_max}"
        )));
    }
    if delta >= omega_max / 2.0 {
        return Err(Error::InfeasiblePassband { delta, half: omega_max / 2.0 });
    }
    Ok(FilterSpec {
        delta,
        omega_max,
        passband: (-omega_max + delta, -delta),
        rise_width: delta,
        fall_width: delta,
    })
}

/// Default `ω_max = 2‖H‖` using the sum of absolute coefficients as `‖H‖`.
pub fn default_omega_max(norm_bound: f64) -> f64 {
    2.0 * norm_bound
}

impl FilterSpec {
    pub fn eval(&self, omega: f64) -> f64 {
        if omega >= 0.0 || omega <= -self.omega_max {
            0.0
        } else if omega > self.passband.1 {
            smooth_step(-omega / self.rise_width)
        } else if omega < self.passband.0 {
            smooth_step((omega + self.omega_max) / self.fall_width)
        } else {
            1.0
        }
    }
}

pub fn eval_fhat(spec: &FilterSpec, omega: f64) -> f64 {
    spec.eval(omega)
}

/// Which version of the filter a jump sees: the exact `f̂` or its quadrature image.
#[derive(Clone, Debug)]
pub enum FilterSource {
    Exact(FilterSpec),
    Quadrature(FilterTable),
}

impl FilterSource {
    pub fn value(&self, omega: f64) -> C64 {
        match self {
            FilterSource::Exact(s) => C64::new(s.eval(omega), 0.0),
            FilterSource::Quadrature(t) => t.reconstruct(omega),
        }
    }

    /// Reconstruction error of the source (zero for the exact filter).
    pub fn eps_quad(&self) -> f64 {
        match self {
            FilterSource::Exact(_) => 0.0,
            FilterSource::Quadrature(t) => t.eps_quad,
        }
    }

    pub fn spec(&self) -> Option<&FilterSpec> {
        match self {
            FilterSource::Exact(s) => Some(s),
            FilterSource::Quadrature(_) => None,
        }
    }
}

/// Time-domain samples of the filter on a uniform trapezoid grid over `[−T, T]`.
#[derive(Clone, Debug)]
pub struct FilterTable {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<C64>,
    pub truncation: f64,
    /// `max_ω |Σ p_j f(s_j) e^{iωs_j} − f̂(ω)|` over the test grid.
    pub eps_quad: f64,
}

/// Default half-width `T = 8·2π/Δ`.
pub fn default_truncation(spec: &FilterSpec) -> f64 {
    8.0 * 2.0 * PI / spec.delta
}

/// Smallest node count whose spacing resolves frequencies up to `ω_max` without aliasing.
pub fn default_nodes(spec: &FilterSpec, truncation: f64) -> usize {
    let spacing = 0.8 * PI / spec.omega_max;
    ((2.0 * truncation / spacing).ceil() as usize + 1).max(64)
}

/// Kernel `f(s)` by trapezoid integration over the support of `f̂`.
///
/// `f̂` is smooth and compactly supported, so the trapezoid rule converges
/// faster than any power; the step is chosen to keep aliasing images outside
/// `|s| ≤ s_max`.
fn kernel(spec: &FilterSpec, s_values: &[f64], s_max: f64) -> Vec<C64> {
    let h = (spec.delta / 32.0).min(PI / (2.0 * s_max.max(1.0)));
    let m = (spec.omega_max / h).ceil() as usize;
    let h = spec.omega_max / m as f64;
    let samples: Vec<(f64, f64)> = (0..=m)
        .map(|i| {
            let w = -spec.omega_max + i as f64 * h;
            (w, spec.eval(w))
        })
        .filter(|&(_, f)| f != 0.0)
        .collect();
    s_values
        .iter()
        .map(|&s| {
            let mut acc = C64::new(0.0, 0.0);
            for &(w, f) in &samples {
                acc += C64::from_polar(f, -w * s);
            }
            acc * (h / (2.0 * PI))
        })
        .collect()
}

impl FilterTable {
    /// `Σ_j p_j f(s_j) e^{iνs_j}`, the filter as seen by the quadrature.
    pub fn reconstruct(&self, nu: f64) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.values)
            .map(|((&s, &p), &f)| f * C64::from_polar(p, nu * s))
            .sum()
    }

    /// Fit `ln|f| ≈ ln C₁ − C₂ |s|^{1/2}` to the running envelope of `|f(s_j)|`.
    ///
    /// Returns `(C₁, C₂, r²)`.
    pub fn envelope_fit(&self) -> Option<(f64, f64, f64)> {
        let bins = 24;
        let t = self.truncation;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for b in 0..bins {
            let lo = t * b as f64 / bins as f64;
            let hi = t * (b + 1) as f64 / bins as f64;
            let peak = self
                .nodes
                .iter()
                .zip(&self.values)
                .filter(|(s, _)| s.abs() >= lo && s.abs() < hi)
                .map(|(_, f)| f.norm())
                .fold(0.0, f64::max);
            if peak > 1e-13 {
                xs.push(hi.sqrt());
                ys.push(peak.ln());
            }
        }
        if xs.len() < 4 {
            return None;
        }
        let (slope, intercept, r2) = linear_fit(&xs, &ys);
        Some((intercept.exp(), -slope, r2))
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Build a quadrature table with `n_nodes` uniform trapezoid nodes on `[−T, T]`.
///
/// When `tolerance` is given, a reconstruction error above it is an error.
pub fn time_domain_samples(
    spec: &FilterSpec,
    n_nodes: usize,
    truncation: f64,
    tolerance: Option<f64>,
) -> Result<FilterTable> {
    if n_nodes < 64 {
        return Err(Error::InvalidArgument(format!("need at least 64 nodes, got {n_nodes}")));
    }
    if !(truncation > 0.0) {
        return Err(Error::InvalidArgument("truncation must be positive".into()));
    }
    let ds = 2.0 * truncation / (n_nodes - 1) as f64;
    let nodes: Vec<f64> = (0..n_nodes).map(|j| -truncation + j as f64 * ds).collect();
    let mut weights = vec![ds; n_nodes];
    weights[0] *= 0.5;
    weights[n_nodes - 1] *= 0.5;
    let values = kernel(spec, &nodes, truncation);
    let mut table = FilterTable { nodes, weights, values, truncation, eps_quad: 0.0 };
    let lo = -1.5 * spec.omega_max;
    let hi = 0.5 * spec.omega_max;
    let grid = 2001;
    table.eps_quad = (0..grid)
        .map(|i| {
            let w = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
            (table.reconstruct(w) - spec.eval(w)).norm()
        })
        .fold(0.0, f64::max);
    if let Some(tol) = tolerance {
        if table.eps_quad > tol {
            return Err(Error::Resolution { eps: table.eps_quad, tol });
        }
    }
    Ok(table)
}

/// Table with the default truncation and node count.
pub fn default_table(spec: &FilterSpec) -> Result<FilterTable> {
    let t = default_truncation(spec);
    time_domain_samples(spec, default_nodes(spec, t), t, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec() -> FilterSpec {
        design_filter(0.5, 8.0).unwrap()
    }

    #[test]
    fn vanishes_at_zero_and_outside_support() {
        let f = spec();
        assert_eq!(f.eval(0.0), 0.0);
        assert_eq!(f.eval(3.0), 0.0);
        assert_eq!(f.eval(-f.omega_max - 1.0), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let w: f64 = rng.random_range(0.0..100.0);
            assert_eq!(eval_fhat(&f, w), 0.0);
        }
    }

    #[test]
    fn plateau_and_transition() {
        let f = spec();
        assert_eq!(f.eval(-(f.delta + f.omega_max) / 2.0), 1.0);
        assert_eq!(f.eval(-3.0), 1.0);
        let mid = f.eval(-f.delta / 2.0);
        // Oracle: the symmetric smooth step equals exactly 1/2 at its midpoint.
        assert!((mid - 0.5).abs() < 1e-15);
        let q = f.eval(-f.delta / 4.0);
        assert!(q > 0.0 && q < 1.0);
    }

    #[test]
    fn transitions_are_monotone() {
        let f = spec();
        let mut prev = 0.0;
        for i in 0..=400 {
            let v = f.eval(-f.delta * i as f64 / 400.0);
            assert!(v >= prev);
            prev = v;
        }
        let mut prev = 0.0;
        for i in 0..=400 {
            let v = f.eval(-f.omega_max + f.delta * i as f64 / 400.0);
            assert!(v >= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn infeasible_passband() {
        assert!(matches!(design_filter(4.0, 8.0), Err(Error::InfeasiblePassband { .. })));
        assert!(design_filter(-1.0, 8.0).is_err());
    }

    #[test]
    fn quadrature_reconstructs_filter() {
        let f = spec();
        let table = default_table(&f).unwrap();
        // With the default T the error is set by truncating the kernel tails.
        assert!(table.eps_quad < 1e-4, "eps_quad = {}", table.eps_quad);
        // The reconstruction of a real filter must itself be real.
        for w in [-4.0, -0.3, -7.9, 2.0] {
            assert!(table.reconstruct(w).im.abs() <= table.eps_quad + 1e-12);
        }
    }

    #[test]
    fn doubling_nodes_does_not_hurt() {
        let f = spec();
        let t = default_truncation(&f);
        // Under-resolved grids alias; refining removes the aliasing.
        let coarse = default_nodes(&f, t) / 3;
        let a = time_domain_samples(&f, coarse, t, None).unwrap();
        let b = time_domain_samples(&f, 2 * coarse - 1, t, None).unwrap();
        assert!(b.eps_quad < a.eps_quad);
        // Once resolved, the error is truncation-limited and refinement leaves it flat.
        let c = time_domain_samples(&f, 4 * coarse - 3, t, None).unwrap();
        assert!(c.eps_quad <= b.eps_quad * 1.01);
    }

    #[test]
    fn kernel_decays_superpolynomially() {
        let table = default_table(&spec()).unwrap();
        let (_, c2, r2) = table.envelope_fit().unwrap();
        assert!(c2 > 0.0);
        assert!(r2 > 0.8, "r2 = {r2}");
    }

    #[test]
    fn resolution_error_when_too_coarse() {
        let f = spec();
        let err = time_domain_samples(&f, 64, default_truncation(&f), Some(1e-6)).unwrap_err();
        assert!(matches!(err, Error::Resolution { .. }));
    }
}
