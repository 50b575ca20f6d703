// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-step RK4 evolution of density matrices and mixing-time extraction.

use std::collections::BTreeMap;

use ndarray::Array1;
use serde::{Deserialize, Serialize};

use super::state::{fidelity_pure, trace_distance, DensityMatrix};
use super::system::DenseLindbladSystem;
use crate::error::{Error, Result};
use crate::fit::fit_decay_rate;
use crate::linalg::{dagger, eigvalsh, hermitian_part, max_abs, trace, CMat, C64};

/// Largest admissible `dt·(‖H‖ + Σ‖K_a‖²)`.
pub const STEP_SAFETY: f64 = 0.1;
/// Energy window defining a degenerate ground manifold.
pub const MANIFOLD_TOL: f64 = 1e-4;
/// Negative eigenvalues of `ρ` below this abort the run.
pub const POSITIVITY_TOL: f64 = 1e-6;

/// Ground-state data the trajectory is measured against.
#[derive(Clone, Debug)]
pub struct Target {
    pub projector: CMat,
    pub dim: usize,
    pub ground_energy: f64,
    /// Distance from `λ₀` to the first level outside the manifold.
    pub gap: f64,
    /// The ground state itself when the manifold is one-dimensional.
    pub state: Option<Array1<C64>>,
}

impl Target {
    pub fn from_system(system: &DenseLindbladSystem, tol: f64) -> Self {
        let (projector, dim) = system.ground_projector(tol);
        let e0 = system.eigvals[0];
        let gap = system.eigvals.get(dim).map_or(f64::INFINITY, |e| e - e0);
        let state = (dim == 1).then(|| system.ground_state());
        Target { projector, dim, ground_energy: e0, gap, state }
    }

    /// `Tr[Πρ]`.
    pub fn overlap(&self, rho: &CMat) -> f64 {
        match &self.state {
            Some(psi) => fidelity_pure(rho, psi).powi(2),
            None => self.projector.iter().zip(rho.t().iter()).map(|(a, b)| a * b).sum::<C64>().re,
        }
    }

    /// Trace distance to the ground state, or to `ΠρΠ/Tr[ΠρΠ]` for a degenerate manifold.
    pub fn distance(&self, rho: &CMat) -> Result<f64> {
        match &self.state {
            Some(psi) => {
                let sigma = CMat::from_shape_fn(rho.raw_dim(), |(i, j)| psi[i] * psi[j].conj());
                trace_distance(rho, &sigma)
            }
            None => {
                let proj = self.projector.dot(rho).dot(&self.projector);
                let w = trace(&proj).re;
                let sigma = if w > 1e-12 {
                    proj.mapv(|z| z / w)
                } else {
                    self.projector.mapv(|z| z / self.dim as f64)
                };
                trace_distance(rho, &sigma)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvolveOptions {
    /// Record every `stride`-th step.
    pub stride: usize,
    pub manifold_tol: f64,
    /// Additional observables `Tr[Oρ]` to record.
    pub observables: Vec<(String, CMat)>,
    pub keep_states: bool,
    /// Skip the singular-value trace distance (recorded as NaN).
    pub skip_trace_distance: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            stride: 1,
            manifold_tol: MANIFOLD_TOL,
            observables: Vec::new(),
            keep_states: false,
            skip_trace_distance: false,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DensityTrajectory {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    /// `√Tr[Πρ]`.
    pub fidelity: Vec<f64>,
    pub trace_distance: Vec<f64>,
    pub purity: Vec<f64>,
    pub observables: BTreeMap<String, Vec<f64>>,
    pub states: Vec<CMat>,
    pub ground_energy: f64,
    pub manifold_dim: usize,
    pub spectral_gap: f64,
    pub hamiltonian_norm: f64,
    /// Accumulated `|Tr ρ − 1|` before renormalization, per unit time.
    pub trace_drift_rate: f64,
    pub min_eigenvalue: f64,
    pub max_hermiticity_defect: f64,
    pub include_coherent: bool,
    pub dt: f64,
}

pub(crate) fn rk4_step(f: impl Fn(&CMat) -> CMat, y: &CMat, dt: f64) -> CMat {
    let k1 = f(y);
    let k2 = f(&(y + &(&k1 * C64::new(dt / 2.0, 0.0))));
    let k3 = f(&(y + &(&k2 * C64::new(dt / 2.0, 0.0))));
    let k4 = f(&(y + &(&k3 * C64::new(dt, 0.0))));
    let sum = k1 + &k2 * C64::new(2.0, 0.0) + &k3 * C64::new(2.0, 0.0) + k4;
    y + &(sum * C64::new(dt / 6.0, 0.0))
}

/// Checks `dt·(‖H‖ + Σ‖K_a‖²) ≤ 0.1`.
pub fn check_step(system: &DenseLindbladSystem, dt: f64) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    let bound = system.rate_bound()?;
    if dt * bound > STEP_SAFETY + 1e-12 {
        return Err(Error::StepSize(format!(
            "dt = {dt} exceeds {STEP_SAFETY}/(‖H‖ + Σ‖K‖²) = {:.4e}",
            STEP_SAFETY / bound
        )));
    }
    Ok(())
}

/// RK4 evolution of `ρ₀` with re-Hermitization and trace renormalization after every step.
pub fn evolve_density(
    system: &DenseLindbladSystem,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
    opts: &EvolveOptions,
) -> Result<DensityTrajectory> {
    if rho0.dim() != system.dim() {
        return Err(Error::Shape("initial state does not match the system".into()));
    }
    if opts.stride == 0 || !(t_end >= 0.0) {
        return Err(Error::InvalidArgument("stride must be nonzero and t_end nonnegative".into()));
    }
    check_step(system, dt)?;
    let target = Target::from_system(system, opts.manifold_tol);
    let steps = (t_end / dt).round() as usize;
    let mut traj = DensityTrajectory {
        ground_energy: target.ground_energy,
        manifold_dim: target.dim,
        spectral_gap: target.gap,
        hamiltonian_norm: system.hamiltonian_norm(),
        min_eigenvalue: f64::INFINITY,
        include_coherent: system.include_coherent,
        dt,
        ..Default::default()
    };
    for (name, _) in &opts.observables {
        traj.observables.insert(name.clone(), Vec::new());
    }
    let mut rho = rho0.rho.clone();
    let mut drift = 0.0;
    record(&mut traj, system, &target, &rho, 0.0, opts)?;
    for k in 1..=steps {
        let next = rk4_step(|r| system.rhs(r), &rho, dt);
        traj.max_hermiticity_defect = traj.max_hermiticity_defect.max(max_abs(&(&next - &dagger(&next))));
        rho = hermitian_part(&next);
        let tr = trace(&rho).re;
        drift += (tr - 1.0).abs();
        rho.mapv_inplace(|z| z / tr);
        if k % opts.stride == 0 || k == steps {
            record(&mut traj, system, &target, &rho, k as f64 * dt, opts)?;
        }
    }
    traj.trace_drift_rate = if t_end > 0.0 { drift / t_end } else { 0.0 };
    Ok(traj)
}

fn record(
    traj: &mut DensityTrajectory,
    system: &DenseLindbladSystem,
    target: &Target,
    rho: &CMat,
    t: f64,
    opts: &EvolveOptions,
) -> Result<()> {
    let low = eigvalsh(rho)?[0];
    if low < -POSITIVITY_TOL {
        return Err(Error::StepSize(format!("ρ has eigenvalue {low:.3e} at t = {t:.4}; reduce dt")));
    }
    traj.min_eigenvalue = traj.min_eigenvalue.min(low);
    let expect = |o: &CMat| o.iter().zip(rho.t().iter()).map(|(a, b)| a * b).sum::<C64>().re;
    traj.times.push(t);
    traj.energy.push(expect(&system.hmat));
    traj.fidelity.push(target.overlap(rho).clamp(0.0, 1.0).sqrt());
    traj.trace_distance.push(if opts.skip_trace_distance { f64::NAN } else { target.distance(rho)? });
    traj.purity.push(rho.iter().map(|z| z.norm_sqr()).sum());
    for (name, o) in &opts.observables {
        traj.observables.get_mut(name).expect("inserted above").push(expect(o));
    }
    if opts.keep_states {
        traj.states.push(rho.clone());
    }
    Ok(())
}

/// First time `values` drops to `threshold`, linearly interpolated between samples.
pub fn crossing_time(times: &[f64], values: &[f64], threshold: f64) -> Option<f64> {
    let i = values.iter().position(|&v| v <= threshold)?;
    if i == 0 {
        return Some(times[0]);
    }
    let (t0, t1, v0, v1) = (times[i - 1], times[i], values[i - 1], values[i]);
    if v0 == v1 {
        return Some(t1);
    }
    Some(t0 + (t1 - t0) * (v0 - threshold) / (v0 - v1))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MixingReport {
    /// First time with `D(ρ, ρ_gs) ≤ η`.
    pub tau_trace: Option<f64>,
    /// First time with `1 − F² ≤ η`.
    pub tau_fidelity: Option<f64>,
    /// First time with `Tr[Hρ] − λ₀ ≤ η`.
    pub tau_energy: Option<f64>,
    pub eta: f64,
    pub initial_state_label: String,
    /// Asymptotic decay rate of `Tr[Hρ] − λ₀`.
    pub fitted_rate: Option<f64>,
}

impl DensityTrajectory {
    pub fn infidelity(&self) -> Vec<f64> {
        self.fidelity.iter().map(|f| 1.0 - f * f).collect()
    }

    pub fn excess_energy(&self) -> Vec<f64> {
        self.energy.iter().map(|e| e - self.ground_energy).collect()
    }

    pub fn tau_trace(&self, eta: f64) -> Option<f64> {
        crossing_time(&self.times, &self.trace_distance, eta)
    }

    pub fn tau_fidelity(&self, eta: f64) -> Option<f64> {
        crossing_time(&self.times, &self.infidelity(), eta)
    }

    pub fn tau_energy(&self, eta: f64) -> Option<f64> {
        crossing_time(&self.times, &self.excess_energy(), eta)
    }
}

/// First-crossing times for the three mixing criteria.
pub fn mixing_times(traj: &DensityTrajectory, eta: f64, label: &str) -> MixingReport {
    let fitted_rate = fit_decay_rate(&traj.times, &traj.energy, traj.ground_energy).ok().map(|f| f.rate);
    MixingReport {
        tau_trace: traj.tau_trace(eta),
        tau_fidelity: traj.tau_fidelity(eta),
        tau_energy: traj.tau_energy(eta),
        eta,
        initial_state_label: label.to_string(),
        fitted_rate,
    }
}
