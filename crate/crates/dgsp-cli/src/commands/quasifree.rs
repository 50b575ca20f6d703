// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `quasifree-run`: covariance-matrix dynamics over a scan of chain lengths.

use dgsp_core::fit::{fit_decay_rate, Axes};
use dgsp_core::quasifree::{energy, evolve_covariance, rapidity_gap, Integrator};
use serde::Serialize;

use super::{initial_covariance, quasifree_setup, scaling_fit, stride_for, FitRecord};
use crate::config::{Engine, ExperimentConfig};
use crate::error::{CliResult, Context};
use crate::io::{Outputs, Table};
use crate::workers::scan;

/// Default RK4 step when `run.dt` is absent.
pub const DEFAULT_RK4_DT: f64 = 0.01;

pub struct SizeResult {
    pub n: usize,
    pub gap: f64,
    pub ground_energy: f64,
    pub t_end: f64,
    pub trajectory: Table,
    pub fitted_rate: f64,
    pub fit_r2: f64,
    pub warnings: Vec<String>,
}

pub fn run_size(cfg: &ExperimentConfig, n: usize) -> CliResult<SizeResult> {
    let setup = quasifree_setup(cfg, n)?;
    let gap = rapidity_gap(&setup.gen).context(|| format!("rapidity gap at N = {n}"))?;
    let e0 = setup.h.ground_energy().context(|| format!("ground energy at N = {n}"))?;
    let t_end = cfg.run.t_end.unwrap_or(cfg.run.tail_factor / gap);
    let (dt, stride) = match cfg.run.integrator {
        Integrator::Exact => (t_end / cfg.run.samples as f64, 1),
        Integrator::Rk4 => {
            let dt = cfg.run.dt.unwrap_or(DEFAULT_RK4_DT);
            (dt, stride_for((t_end / dt).round() as usize, cfg.run.samples))
        }
    };
    let g0 = initial_covariance(cfg.run.initial_state, n)?;
    let states = evolve_covariance(&setup.gen, &g0, t_end, dt, cfg.run.integrator, stride)
        .context(|| format!("covariance evolution at N = {n}"))?;
    let mut trajectory = Table::new(&["t", "energy", "excess_energy"]);
    let (mut times, mut energies) = (Vec::new(), Vec::new());
    for s in &states {
        let e = energy(&setup.h, &s.gamma).context(|| format!("energy at N = {n}"))?;
        trajectory.push(vec![s.time, e, e - e0]);
        times.push(s.time);
        energies.push(e);
    }
    let (fitted_rate, fit_r2, warnings) = match fit_decay_rate(&times, &energies, e0) {
        Ok(f) => (f.rate, f.r2, f.warnings),
        Err(e) => (f64::NAN, f64::NAN, vec![e.to_string()]),
    };
    Ok(SizeResult { n, gap, ground_energy: e0, t_end, trajectory, fitted_rate, fit_r2, warnings })
}

#[derive(Serialize)]
struct Summary {
    fit: Option<FitRecord>,
    warnings: Vec<String>,
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
    cfg.validate(Engine::QuasiFree)?;
    let results = scan(&cfg.sizes, workers, |&n| run_size(cfg, n))?;
    let mut out = Outputs::create(&cfg.output_dir)?;
    let mut table =
        Table::new(&["n", "rapidity_gap", "fitted_rate", "rate_rel_err", "fit_r2", "ground_energy", "t_end"]);
    let mut warnings = Vec::new();
    for r in &results {
        out.table(&format!("energy_n{}.csv", r.n), &r.trajectory)?;
        let rel = (r.fitted_rate - r.gap).abs() / r.gap;
        table.push(vec![r.n as f64, r.gap, r.fitted_rate, rel, r.fit_r2, r.ground_energy, r.t_end]);
        warnings.extend(r.warnings.iter().map(|w| format!("N = {}: {w}", r.n)));
    }
    out.table("scan.csv", &table)?;
    let xs: Vec<f64> = results.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = results.iter().map(|r| r.gap).collect();
    let fit = scaling_fit(&xs, &ys, Axes::LogLog, "n", "rapidity_gap")?;
    out.json("summary.json", &Summary { fit, warnings })?;
    out.finish("quasifree-run", cfg, workers)
}
