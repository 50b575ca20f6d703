// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `oscillator-check`: decay of the oscillator norm under the adjoint dynamics.

use dgsp_core::dense::{heisenberg_decay_check, DenseLindbladSystem, STEP_SAFETY};
use dgsp_core::hamiltonians::{pauli_matrix, Pauli, PauliString, SpinHamiltonian};
use serde::Serialize;

use super::stride_for;
use crate::config::{Engine, ExperimentConfig, OscillatorConfig};
use crate::error::{CliError, CliResult, Context};
use crate::io::{Outputs, Table};
use crate::workers::scan;

/// `H + ε Σ X_i X_{i+1}` on an open chain.
pub fn perturbed(ham: &SpinHamiltonian, epsilon: f64) -> CliResult<SpinHamiltonian> {
    let mut h = ham.clone();
    if epsilon != 0.0 {
        for i in 0..h.n_sites.saturating_sub(1) {
            let t = PauliString::from_pairs(&[(i, Pauli::X), (i + 1, Pauli::X)], epsilon)
                .context(|| "perturbation".into())?;
            h.push(t).context(|| "perturbation".into())?;
        }
    }
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct OscillatorRow {
    pub n: usize,
    pub rate: f64,
    pub r2: f64,
    pub warnings: Vec<String>,
}

pub fn run_size(cfg: &ExperimentConfig, oc: &OscillatorConfig, n: usize) -> CliResult<(OscillatorRow, Table)> {
    let t_end = cfg.run.t_end.ok_or_else(|| CliError::Config("run.t_end: required for oscillator-check".into()))?;
    let ham = perturbed(&cfg.model.build(n, cfg.seed)?, oc.epsilon)?;
    let filter = cfg.filter.source(&ham)?;
    let ops = cfg.couplings.operators(n)?;
    let sys =
        DenseLindbladSystem::new(&ham, &ops, &filter, oc.coherent).context(|| format!("dense system at N = {n}"))?;
    let obs = PauliString::parse(&oc.observable).map_err(|e| CliError::Config(format!("oscillator.observable: {e}")))?;
    let o = pauli_matrix(&obs, n).map_err(|e| CliError::Config(format!("oscillator.observable: {e}")))?;
    let dt = match cfg.run.dt {
        Some(dt) => dt,
        None => STEP_SAFETY / sys.rate_bound().context(|| format!("rate bound at N = {n}"))?,
    };
    let stride = stride_for((t_end / dt).round() as usize, cfg.run.samples);
    let d = heisenberg_decay_check(&sys, &o, t_end, dt, stride).context(|| format!("adjoint evolution at N = {n}"))?;
    let mut table = Table::new(&["t", "oscillator_norm", "centered_norm"]);
    for i in 0..d.times.len() {
        table.push(vec![d.times[i], d.norms[i], d.centered_norms[i]]);
    }
    let mut warnings = d.warnings.clone();
    warnings.extend(d.fit.warnings.iter().cloned());
    Ok((OscillatorRow { n, rate: d.fit.rate, r2: d.fit.r2, warnings }, table))
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
    cfg.validate(Engine::Dense)?;
    let oc = cfg.oscillator.clone().unwrap_or(OscillatorConfig {
        epsilon: 0.0,
        observable: "Z0".into(),
        coherent: false,
    });
    let results = scan(&cfg.sizes, workers, |&n| run_size(cfg, &oc, n))?;
    let mut out = Outputs::create(&cfg.output_dir)?;
    let mut table = Table::new(&["n", "rate", "r2"]);
    let mut rows = Vec::new();
    for (row, series) in results {
        out.table(&format!("oscillator_n{}.csv", row.n), &series)?;
        table.push(vec![row.n as f64, row.rate, row.r2]);
        rows.push(row);
    }
    out.table("rates.csv", &table)?;
    out.json("summary.json", &rows)?;
    out.finish("oscillator-check", cfg, workers)
}
