// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `dense-run`: exact density-matrix dynamics and mixing times over a scan of sizes.

use dgsp_core::dense::{
    evolve_density, mixing_times, DenseLindbladSystem, DensityMatrix, EvolveOptions, MixingReport, STEP_SAFETY,
};
use dgsp_core::fit::Axes;
use serde::Serialize;

use super::{scaling_fit, stride_for, FitRecord};
use crate::config::{Engine, ExperimentConfig, InitialState};
use crate::error::{CliError, CliResult, Context};
use crate::io::{Outputs, Table};
use crate::workers::scan;

pub fn initial_density(state: InitialState, n: usize, seed: u64) -> DensityMatrix {
    match state {
        InitialState::AllUp => DensityMatrix::all_up(n),
        InitialState::AllDown => DensityMatrix::all_down(n),
        InitialState::MaximallyMixed => DensityMatrix::maximally_mixed(n),
        InitialState::RandomPure => DensityMatrix::random_pure(n, seed),
        InitialState::RandomMixed => DensityMatrix::random_mixed(n, seed),
    }
}

pub struct SizeResult {
    pub n: usize,
    pub ground_energy: f64,
    pub spectral_gap: f64,
    pub manifold_dim: usize,
    pub report: MixingReport,
    pub trajectory: Table,
}

pub fn run_size(cfg: &ExperimentConfig, n: usize) -> CliResult<SizeResult> {
    let t_end = cfg.run.t_end.ok_or_else(|| CliError::Config("run.t_end: required for dense runs".into()))?;
    let ham = cfg.model.build(n, cfg.seed)?;
    let filter = cfg.filter.source(&ham)?;
    let ops = cfg.couplings.operators(n)?;
    let sys = DenseLindbladSystem::new(&ham, &ops, &filter, cfg.run.coherent)
        .context(|| format!("dense system at N = {n}"))?;
    let dt = match cfg.run.dt {
        Some(dt) => dt,
        None => STEP_SAFETY / sys.rate_bound().context(|| format!("rate bound at N = {n}"))?,
    };
    let opts = EvolveOptions { stride: stride_for((t_end / dt).round() as usize, cfg.run.samples), ..Default::default() };
    let rho0 = initial_density(cfg.run.initial_state, n, cfg.seed);
    let traj = evolve_density(&sys, &rho0, t_end, dt, &opts).context(|| format!("density evolution at N = {n}"))?;
    let report = mixing_times(&traj, cfg.run.eta, cfg.run.initial_state.label());
    let mut trajectory = Table::new(&["t", "energy", "excess_energy", "fidelity", "trace_distance", "purity"]);
    for i in 0..traj.times.len() {
        trajectory.push(vec![
            traj.times[i],
            traj.energy[i],
            traj.energy[i] - traj.ground_energy,
            traj.fidelity[i],
            traj.trace_distance[i],
            traj.purity[i],
        ]);
    }
    Ok(SizeResult {
        n,
        ground_energy: traj.ground_energy,
        spectral_gap: traj.spectral_gap,
        manifold_dim: traj.manifold_dim,
        report,
        trajectory,
    })
}

#[derive(Serialize)]
struct Summary {
    reports: Vec<(usize, MixingReport)>,
    fit: Option<FitRecord>,
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
    cfg.validate(Engine::Dense)?;
    let results = scan(&cfg.sizes, workers, |&n| run_size(cfg, n))?;
    let mut out = Outputs::create(&cfg.output_dir)?;
    let mut table = Table::new(&[
        "n",
        "ground_energy",
        "spectral_gap",
        "manifold_dim",
        "tau_trace",
        "tau_fidelity",
        "tau_energy",
        "fitted_rate",
    ]);
    let opt = |x: Option<f64>| x.unwrap_or(f64::NAN);
    for r in &results {
        out.table(&format!("trajectory_n{}.csv", r.n), &r.trajectory)?;
        table.push(vec![
            r.n as f64,
            r.ground_energy,
            r.spectral_gap,
            r.manifold_dim as f64,
            opt(r.report.tau_trace),
            opt(r.report.tau_fidelity),
            opt(r.report.tau_energy),
            opt(r.report.fitted_rate),
        ]);
    }
    out.table("scan.csv", &table)?;
    let xs: Vec<f64> = results.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = results.iter().map(|r| opt(r.report.tau_fidelity)).collect();
    let fit = scaling_fit(&xs, &ys, Axes::SemiLogX, "n", "tau_fidelity")?;
    let reports = results.into_iter().map(|r| (r.n, r.report)).collect();
    out.json("summary.json", &Summary { reports, fit })?;
    out.finish("dense-run", cfg, workers)
}
