// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Covariance-matrix dynamics `∂_t Γ = XΓ + ΓXᵀ + Y` for quasi-free Lindbladians.
//!
//! `Γ_pq = i⟨w_p w_q⟩ − (i/2)δ_pq`.  With `B = Σ_a ζ_a ζ_a†` the generator is
//! `X = −2ih − Re B` and `Y = Im B`.

use ndarray::{Array1, Array2};

use super::jumps::LinearJump;
use crate::error::{Error, Result};
use crate::hamiltonians::{MajoranaQuadratic, QuasiParticles};
use crate::linalg::{antisymmetry_defect, eig_real, inv, max_abs_real, op_norm, to_complex, CMat, RMat, C64, ZERO};

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceState {
    pub gamma: RMat,
    pub time: f64,
}

impl CovarianceState {
    pub fn new(gamma: RMat, time: f64) -> Self {
        CovarianceState { gamma, time }
    }

    /// `Γ = 0`.
    pub fn maximally_mixed(n_modes: usize) -> Self {
        CovarianceState { gamma: RMat::zeros((2 * n_modes, 2 * n_modes)), time: 0.0 }
    }

    /// Computational-basis product state; `excited[j]` selects `|1⟩` on site `j`.
    ///
    /// `⟨w_j w_{j+N}⟩ = i⟨Z_j⟩/2`, so `Γ_{j,j+N} = −⟨Z_j⟩/2`.
    pub fn product_state(excited: &[bool]) -> Self {
        let n = excited.len();
        let mut g = RMat::zeros((2 * n, 2 * n));
        for (j, &e) in excited.iter().enumerate() {
            let v = if e { 0.5 } else { -0.5 };
            g[[j, j + n]] = v;
            g[[j + n, j]] = -v;
        }
        CovarianceState { gamma: g, time: 0.0 }
    }

    pub fn all_down(n: usize) -> Self {
        Self::product_state(&vec![true; n])
    }

    pub fn n_modes(&self) -> usize {
        self.gamma.nrows() / 2
    }

    /// `‖2Γ‖` in the spectral norm.
    pub fn physicality(&self) -> Result<f64> {
        Ok(2.0 * op_norm(&to_complex(&self.gamma))?)
    }

    pub fn validate(&self) -> Result<()> {
        let defect = antisymmetry_defect(self.gamma.view());
        if defect > 1e-10 {
            return Err(Error::InconsistentState(format!("Γ + Γᵀ has entries of size {defect:.2e}")));
        }
        let p = self.physicality()?;
        if p > 1.0 + 1e-8 {
            return Err(Error::InconsistentState(format!("‖2Γ‖ = {p} exceeds 1")));
        }
        Ok(())
    }
}

/// Drift `X`, source `Y` and the jump matrix `B` of the covariance equation.
#[derive(Clone, Debug)]
pub struct QuasiFreeGenerator {
    pub x: RMat,
    pub y: RMat,
    pub b: CMat,
    pub h: MajoranaQuadratic,
    pub coherent: bool,
}

/// `B_pq = Σ_a ζ_{ap} ζ*_{aq}`.
pub fn jump_matrix(n_modes: usize, jumps: &[LinearJump]) -> Result<CMat> {
    let d = 2 * n_modes;
    let mut b = CMat::zeros((d, d));
    for j in jumps {
        if j.zeta.len() != d {
            return Err(Error::Shape(format!("jump `{}` has length {}, expected {d}", j.label, j.zeta.len())));
        }
        for p in 0..d {
            let zp = j.zeta[p];
            if zp == ZERO {
                continue;
            }
            for q in 0..d {
                b[[p, q]] += zp * j.zeta[q].conj();
            }
        }
    }
    Ok(b)
}

pub fn build_generator(h: &MajoranaQuadratic, jumps: &[LinearJump]) -> Result<QuasiFreeGenerator> {
    build_generator_with(h, jumps, true)
}

/// Generator with the coherent term switched on or off (`X = −Re B` when off).
pub fn build_generator_with(h: &MajoranaQuadratic, jumps: &[LinearJump], coherent: bool) -> Result<QuasiFreeGenerator> {
    h.validate()?;
    let b = jump_matrix(h.n_modes, jumps)?;
    let mut x = b.mapv(|z| -z.re);
    if coherent {
        x = x + h.coherent_drift();
    }
    let y = b.mapv(|z| z.im);
    Ok(QuasiFreeGenerator { x, y, b, h: h.clone(), coherent })
}

impl QuasiFreeGenerator {
    pub fn n_modes(&self) -> usize {
        self.h.n_modes
    }

    /// `XΓ + ΓXᵀ + Y`.
    pub fn rhs(&self, gamma: &RMat) -> RMat {
        let xg = self.x.dot(gamma);
        &xg - &xg.t() + &self.y
    }

    pub fn residual(&self, gamma: &RMat) -> f64 {
        max_abs_real(&self.rhs(gamma))
    }

    pub fn x_eigenvalues(&self) -> Result<Array1<C64>> {
        Ok(eig_real(&self.x)?.0)
    }
}

/// `E = −i Σ_pq h_pq Γ_pq + shift`.
pub fn energy(h: &MajoranaQuadratic, gamma: &RMat) -> Result<f64> {
    if gamma.dim() != h.h.dim() {
        return Err(Error::Shape("Γ and h differ in shape".into()));
    }
    let s: C64 = h.h.iter().zip(gamma.iter()).map(|(a, &g)| a * g).sum();
    let e = C64::new(0.0, -1.0) * s;
    if e.im.abs() > 1e-9 * (1.0 + e.re.abs()) {
        return Err(Error::InconsistentState(format!("energy has imaginary part {:.2e}", e.im)));
    }
    Ok(e.re + h.constant_shift)
}

/// Covariance matrix of the quasiparticle vacuum, `Γ = Re(i U₊U₊†)` with zero diagonal.
pub fn vacuum_covariance(h: &MajoranaQuadratic) -> Result<CovarianceState> {
    let qp = h.quasiparticles()?;
    vacuum_from_quasiparticles(&qp)
}

pub fn vacuum_from_quasiparticles(qp: &QuasiParticles) -> Result<CovarianceState> {
    let top = qp.lambdas.iter().cloned().fold(1.0, f64::max);
    let low = qp.lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
    if low <= 1e-10 * top {
        return Err(Error::Gapless(format!("smallest single-particle energy {low:.2e}; vacuum is degenerate")));
    }
    let u = &qp.modes;
    let p = u.dot(&u.t().mapv(|z| z.conj()));
    let mut g = p.mapv(|z| -z.im);
    for i in 0..g.nrows() {
        g[[i, i]] = 0.0;
    }
    Ok(CovarianceState { gamma: g, time: 0.0 })
}

/// `Tr[N̂ρ] = Σ_k ⟨b_k†b_k⟩ = N/2 − i Σ_k u_kᵀ Γ u_k*`.
pub fn particle_number(qp: &QuasiParticles, gamma: &RMat) -> f64 {
    let n = qp.lambdas.len();
    let gc = to_complex(gamma);
    let gu = gc.dot(&qp.modes.mapv(|z| z.conj()));
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..n {
        for p in 0..2 * n {
            acc += qp.modes[[p, k]] * gu[[p, k]];
        }
    }
    n as f64 / 2.0 + (C64::new(0.0, -1.0) * acc).re
}

/// Eigenbasis of `X` used for the Lyapunov solve and for exact propagation.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    pub lambda: Array1<C64>,
    v: CMat,
    vinv: CMat,
    /// `V⁻¹ Y V⁻ᵀ`.
    ytil: CMat,
}

impl SpectralPropagator {
    pub fn new(gen: &QuasiFreeGenerator) -> Result<Self> {
        let (lambda, v) = eig_real(&gen.x)?;
        let vinv = inv(&v)?;
        let ytil = vinv.dot(&to_complex(&gen.y)).dot(&vinv.t());
        Ok(SpectralPropagator { lambda, v, vinv, ytil })
    }

    fn to_eigen(&self, gamma: &RMat) -> CMat {
        self.vinv.dot(&to_complex(gamma)).dot(&self.vinv.t())
    }

    fn from_eigen(&self, m: &CMat) -> RMat {
        let g = self.v.dot(m).dot(&self.v.t()).mapv(|z| z.re);
        (&g - &g.t()).mapv(|x| 0.5 * x)
    }

    /// Unique solution of `XΓ + ΓXᵀ + Y = 0`.
    pub fn steady_state(&self) -> Result<RMat> {
        let top = self.lambda.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
        if top > -1e-12 {
            return Err(Error::NonUniqueSteadyState(format!(
                "drift eigenvalue with real part {top:.2e} touches the imaginary axis"
            )));
        }
        let n = self.lambda.len();
        let m = Array2::from_shape_fn((n, n), |(i, j)| -self.ytil[[i, j]] / (self.lambda[i] + self.lambda[j]));
        Ok(self.from_eigen(&m))
    }

    /// Prepare exact propagation from `Γ(0) = gamma0`.
    pub fn start(&self, gamma0: &RMat) -> Propagation<'_> {
        Propagation { prop: self, c0: self.to_eigen(gamma0) }
    }
}

/// Closed-form `Γ(t)` in the eigenbasis of `X`: each entry obeys `ċ = (λ_i+λ_j)c + ỹ`.
pub struct Propagation<'a> {
    prop: &'a SpectralPropagator,
    c0: CMat,
}

fn expm1_over(s: C64, t: f64) -> C64 {
    let st = s * t;
    if st.norm() < 1e-5 {
        C64::new(t, 0.0) * (1.0 + st / 2.0 + st * st / 6.0)
    } else {
        (st.exp() - 1.0) / s
    }
}

impl Propagation<'_> {
    pub fn at(&self, t: f64) -> RMat {
        let l = &self.prop.lambda;
        let n = l.len();
        let m = Array2::from_shape_fn((n, n), |(i, j)| {
            let s = l[i] + l[j];
            self.c0[[i, j]] * (s * t).exp() + self.prop.ytil[[i, j]] * expm1_over(s, t)
        });
        self.prop.from_eigen(&m)
    }
}

/// Steady state and its residual `‖XΓ* + Γ*Xᵀ + Y‖_max`.
pub fn steady_state(gen: &QuasiFreeGenerator) -> Result<(CovarianceState, f64)> {
    let g = SpectralPropagator::new(gen)?.steady_state()?;
    let r = gen.residual(&g);
    Ok((CovarianceState { gamma: g, time: f64::INFINITY }, r))
}

/// `Δ_L = 2 min_i(−Re λ_i(X))`; pairwise sums of drift eigenvalues set the relaxation of `Γ`.
pub fn rapidity_gap(gen: &QuasiFreeGenerator) -> Result<f64> {
    let l = gen.x_eigenvalues()?;
    Ok(2.0 * l.iter().map(|z| -z.re).fold(f64::INFINITY, f64::min))
}

/// Like [`rapidity_gap`] after discarding eigenvalues with `−Re λ < cluster_tol`.
pub fn effective_rapidity_gap(gen: &QuasiFreeGenerator, cluster_tol: f64) -> Result<f64> {
    let l = gen.x_eigenvalues()?;
    let kept: Vec<f64> = l.iter().map(|z| -z.re).filter(|&r| r >= cluster_tol).collect();
    if kept.is_empty() {
        return Err(Error::InvalidArgument(format!("cluster_tol {cluster_tol:.2e} discards every eigenvalue")));
    }
    Ok(2.0 * kept.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    /// Fixed-step fourth-order Runge–Kutta.
    Rk4,
    /// Closed-form propagation in the eigenbasis of `X`.
    Exact,
}

/// States at `t = k·dt·stride`, `k = 0, 1, …` up to `t_end`.
pub fn evolve_covariance(
    gen: &QuasiFreeGenerator,
    gamma0: &CovarianceState,
    t_end: f64,
    dt: f64,
    method: Integrator,
    stride: usize,
) -> Result<Vec<CovarianceState>> {
    if !(dt > 0.0) || stride == 0 {
        return Err(Error::InvalidArgument("dt must be positive and stride nonzero".into()));
    }
    if gamma0.gamma.dim() != gen.x.dim() {
        return Err(Error::Shape("initial Γ does not match the generator".into()));
    }
    gamma0.validate()?;
    let steps = (t_end / dt).round() as usize;
    let t0 = gamma0.time;
    let mut out = vec![gamma0.clone()];
    match method {
        Integrator::Exact => {
            let sp = SpectralPropagator::new(gen)?;
            let run = sp.start(&gamma0.gamma);
            for k in (stride..=steps).step_by(stride) {
                let t = k as f64 * dt;
                out.push(CovarianceState { gamma: run.at(t), time: t0 + t });
            }
        }
        Integrator::Rk4 => {
            let mut g = gamma0.gamma.clone();
            for k in 1..=steps {
                let k1 = gen.rhs(&g);
                let k2 = gen.rhs(&(&g + &(&k1 * (dt / 2.0))));
                let k3 = gen.rhs(&(&g + &(&k2 * (dt / 2.0))));
                let k4 = gen.rhs(&(&g + &(&k3 * dt)));
                g = &g + &((&k1 + &(&k2 * 2.0) + &(&k3 * 2.0) + &k4) * (dt / 6.0));
                g = (&g - &g.t()) * 0.5;
                if k % stride == 0 {
                    let s = CovarianceState { gamma: g.clone(), time: t0 + k as f64 * dt };
                    let p = s.physicality()?;
                    if p > 1.0 + 1e-3 {
                        return Err(Error::StepSize(format!("‖2Γ‖ = {p:.6} at t = {:.4}; reduce dt", s.time)));
                    }
                    out.push(s);
                }
            }
        }
    }
    Ok(out)
}
