// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `asp-compare`: adiabatic versus dissipative preparation on an ANNNI ring.

use dgsp_core::adiabatic::{
    asp_initial_hamiltonian, asp_run_ring, count_swings, dsp_run_ring, gap_path, late_oscillation, monotone_after,
    Schedule,
};
use dgsp_core::dense::{SymmetryBasis, MANIFOLD_TOL};
use dgsp_core::hamiltonians::PauliString;
use serde::Serialize;

use crate::config::{AdiabaticConfig, Engine, ExperimentConfig, ModelConfig};
use crate::error::{CliError, CliResult, Context};
use crate::io::{Outputs, Table};
use crate::workers::scan;

/// Swings smaller than this are not counted as oscillations.
pub const MIN_SWING: f64 = 0.01;
/// Fraction of the dissipative run treated as the initial transient.
pub const TRANSIENT_FRACTION: f64 = 0.05;

/// The couplings on site 0; their translates must make up the full set.
pub fn translation_base(ops: &[PauliString], l: usize) -> CliResult<Vec<PauliString>> {
    let base: Vec<PauliString> = ops.iter().filter(|p| p.sites.first() == Some(&0)).cloned().collect();
    if base.is_empty() || base.len() * l != ops.len() {
        return Err(CliError::Config(
            "couplings: asp-compare needs a translation-invariant set (one operator family per site)".into(),
        ));
    }
    Ok(base)
}

#[derive(Clone, Debug, Serialize)]
pub struct RingSummary {
    pub l: usize,
    pub asp_final_overlap: f64,
    pub asp_max_overlap: f64,
    pub asp_swings_second_half: usize,
    pub asp_late_oscillation: f64,
    pub asp_max_norm_drift: f64,
    pub dsp_final_overlap: f64,
    pub dsp_final_m1: f64,
    pub dsp_final_m2: f64,
    pub target_values: Vec<(f64, f64)>,
    pub manifold_dim: usize,
    pub m1_monotone_after_transient: bool,
    pub m2_monotone_after_transient: bool,
    pub dsp_dt: f64,
    pub asp_dt: f64,
}

pub struct RingResult {
    pub summary: RingSummary,
    pub gap: Table,
    pub asp: Table,
    pub dsp: Table,
}

pub fn run_ring(cfg: &ExperimentConfig, ac: &AdiabaticConfig, l: usize) -> CliResult<RingResult> {
    let target = cfg.model.build(l, cfg.seed)?;
    let init = asp_initial_hamiltonian(l, ac.h0).map_err(|e| CliError::Config(format!("adiabatic.h0: {e}")))?;
    let basis = SymmetryBasis::translation(l).context(|| format!("translation basis at L = {l}"))?;
    let path = gap_path(&init, &target, ac.gap_samples, MANIFOLD_TOL, Some(&basis))
        .context(|| format!("gap path at L = {l}"))?;
    let mut gap = Table::new(&["s", "gap", "manifold_dim"]);
    for i in 0..path.s.len() {
        gap.push(vec![path.s[i], path.gap[i], path.manifold_dim[i] as f64]);
    }

    let schedule = Schedule::linear(ac.asp_time).map_err(|e| CliError::Config(format!("adiabatic.asp_time: {e}")))?;
    let asp = asp_run_ring(&init, &target, &schedule, ac.asp_dt, ac.record_every)
        .context(|| format!("adiabatic run at L = {l}"))?;
    let tr = &asp.trace;
    let mut asp_table = Table::new(&["t", "s", "overlap", "m1", "m2"]);
    for i in 0..tr.times.len() {
        asp_table.push(vec![tr.times[i], tr.s[i], tr.overlap[i], tr.observables["m1"][i], tr.observables["m2"][i]]);
    }

    let filter = cfg.filter.source(&target)?;
    let base = translation_base(&cfg.couplings.operators(l)?, l)?;
    let dsp = dsp_run_ring(&target, &base, &filter, ac.dsp_time, cfg.run.dt, ac.record_every)
        .context(|| format!("dissipative run at L = {l}"))?;
    let mut dsp_table = Table::new(&["t", "overlap", "energy", "m1", "m2"]);
    for i in 0..dsp.times.len() {
        dsp_table.push(vec![dsp.times[i], dsp.overlap[i], dsp.energy[i], dsp.m1[i], dsp.m2[i]]);
    }

    let half = tr.overlap.len() / 2;
    let t_from = TRANSIENT_FRACTION * ac.dsp_time;
    let last = |v: &[f64]| v.last().copied().unwrap_or(f64::NAN);
    let summary = RingSummary {
        l,
        asp_final_overlap: last(&tr.overlap),
        asp_max_overlap: tr.overlap.iter().cloned().fold(0.0, f64::max),
        asp_swings_second_half: count_swings(&tr.overlap[half..], MIN_SWING),
        asp_late_oscillation: late_oscillation(&tr.times, &tr.overlap, 0.5),
        asp_max_norm_drift: tr.max_norm_drift,
        dsp_final_overlap: last(&dsp.overlap),
        dsp_final_m1: last(&dsp.m1),
        dsp_final_m2: last(&dsp.m2),
        target_values: dsp.manifold_values.clone(),
        manifold_dim: dsp.manifold_dim,
        m1_monotone_after_transient: monotone_after(&dsp.times, &dsp.m1, t_from, 1e-12),
        m2_monotone_after_transient: monotone_after(&dsp.times, &dsp.m2, t_from, 1e-12),
        dsp_dt: dsp.dt,
        asp_dt: tr.dt,
    };
    Ok(RingResult { summary, gap, asp: asp_table, dsp: dsp_table })
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
    cfg.validate(Engine::Adiabatic)?;
    if !matches!(cfg.model, ModelConfig::Annni { .. }) {
        return Err(CliError::Config("model.kind: asp-compare runs on the annni model".into()));
    }
    let ac = cfg.adiabatic.clone().ok_or_else(|| CliError::Config("adiabatic: section is required".into()))?;
    if !(ac.dsp_time > 0.0 && ac.record_every > 0.0) {
        return Err(CliError::Config("adiabatic.dsp_time and adiabatic.record_every must be positive".into()));
    }
    let results = scan(&cfg.sizes, workers, |&l| run_ring(cfg, &ac, l))?;
    let mut out = Outputs::create(&cfg.output_dir)?;
    let mut summaries = Vec::new();
    for r in results {
        let l = r.summary.l;
        out.table(&format!("gap_path_l{l}.csv"), &r.gap)?;
        out.table(&format!("asp_l{l}.csv"), &r.asp)?;
        out.table(&format!("dsp_l{l}.csv"), &r.dsp)?;
        summaries.push(r.summary);
    }
    out.json("summary.json", &summaries)?;
    out.finish("asp-compare", cfg, workers)
}
