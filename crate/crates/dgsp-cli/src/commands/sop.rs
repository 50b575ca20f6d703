// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `sop-run`: string order parameter along a quasi-free trajectory, plus a
//! ground-state sweep of the cluster field.

use dgsp_core::hamiltonians::{build_cluster, jordan_wigner};
use dgsp_core::quasifree::{energy, evolve_covariance, sop, vacuum_covariance, Integrator};
use serde::Serialize;

use super::{initial_covariance, quasifree_setup, stride_for};
use crate::config::{Engine, ExperimentConfig, ModelConfig, SopConfig};
use crate::error::{CliError, CliResult, Context};
use crate::io::{Outputs, Table};
use crate::workers::scan;

/// Bulk window `(a, b)` a fifth of the chain away from each end, with `b − a` even.
pub fn bulk_window(n: usize) -> (usize, usize) {
    let a = n / 5;
    let mut b = n - 1 - n / 5;
    if (b - a) % 2 == 1 {
        b -= 1;
    }
    (a, b)
}

pub struct SopTrace {
    pub n: usize,
    pub window: (usize, usize),
    pub table: Table,
}

pub fn trace_size(cfg: &ExperimentConfig, sc: &SopConfig, n: usize) -> CliResult<SopTrace> {
    let t_end = cfg.run.t_end.ok_or_else(|| CliError::Config("run.t_end: required for sop-run".into()))?;
    let (a, b) = sc.window.unwrap_or_else(|| bulk_window(n));
    if b <= a || b >= n || (b - a) % 2 == 1 {
        return Err(CliError::Config(format!("sop.window: ({a}, {b}) needs a < b < {n} with b − a even")));
    }
    let setup = quasifree_setup(cfg, n)?;
    let (dt, stride) = match cfg.run.integrator {
        Integrator::Exact => (t_end / cfg.run.samples as f64, 1),
        Integrator::Rk4 => {
            let dt = cfg.run.dt.unwrap_or(super::quasifree::DEFAULT_RK4_DT);
            (dt, stride_for((t_end / dt).round() as usize, cfg.run.samples))
        }
    };
    let g0 = initial_covariance(cfg.run.initial_state, n)?;
    let states = evolve_covariance(&setup.gen, &g0, t_end, dt, cfg.run.integrator, stride)
        .context(|| format!("covariance evolution at N = {n}"))?;
    let mut table = Table::new(&["t", "sop", "energy"]);
    for s in &states {
        let v = sop(&s.gamma, a, b).context(|| format!("string order at t = {}", s.time))?;
        let e = energy(&setup.h, &s.gamma).context(|| "energy".into())?;
        table.push(vec![s.time, v, e]);
    }
    Ok(SopTrace { n, window: (a, b), table })
}

/// Ground-state string order of the cluster chain at each `h₁/J`.
pub fn ground_sweep(j: f64, n: usize, window: (usize, usize), ratios: &[f64], workers: usize) -> CliResult<Table> {
    let values = scan(ratios, workers, |&r| {
        let ham = build_cluster(n, j, r * j).map_err(|e| CliError::Config(format!("sop.sweep: {e}")))?;
        let h = jordan_wigner(&ham).context(|| "cluster model".into())?;
        let vac = vacuum_covariance(&h).context(|| format!("ground state at h1/J = {r}"))?;
        sop(&vac.gamma, window.0, window.1).context(|| format!("string order at h1/J = {r}"))
    })?;
    let mut table = Table::new(&["h1_over_j", "sop"]);
    for (r, v) in ratios.iter().zip(values) {
        table.push(vec![*r, v]);
    }
    Ok(table)
}

#[derive(Serialize)]
struct Summary {
    final_sop: Vec<(usize, f64)>,
    windows: Vec<(usize, (usize, usize))>,
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
    cfg.validate(Engine::QuasiFree)?;
    let sc = cfg.sop.clone().unwrap_or(SopConfig { window: None, sweep: Vec::new() });
    let traces = scan(&cfg.sizes, workers, |&n| trace_size(cfg, &sc, n))?;
    let mut out = Outputs::create(&cfg.output_dir)?;
    let mut summary = Summary { final_sop: Vec::new(), windows: Vec::new() };
    for t in &traces {
        out.table(&format!("sop_n{}.csv", t.n), &t.table)?;
        let last = t.table.rows.last().map_or(f64::NAN, |r| r[1]);
        summary.final_sop.push((t.n, last));
        summary.windows.push((t.n, t.window));
    }
    if !sc.sweep.is_empty() {
        let ModelConfig::Cluster { j, .. } = cfg.model else {
            return Err(CliError::Config("sop.sweep: only defined for the cluster model".into()));
        };
        for t in &traces {
            let table = ground_sweep(j, t.n, t.window, &sc.sweep, workers)?;
            out.table(&format!("sop_sweep_n{}.csv", t.n), &table)?;
        }
    }
    out.json("summary.json", &summary)?;
    out.finish("sop-run", cfg, workers)
}
