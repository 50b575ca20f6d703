// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `gap-scan`: Liouvillian gaps, non-Hermitian spectra and mixing bounds without dynamics.

use dgsp_core::fit::Axes;
use dgsp_core::quasifree::{effective_rapidity_gap, mixing_bound, nonhermitian_summary, rapidity_gap};
use dgsp_core::Error;
use serde::Serialize;

use super::{quasifree_setup, scaling_fit, FitRecord};
use crate::config::{Engine, ExperimentConfig, GapConfig};
use crate::error::{CliResult, Context};
use crate::io::{Outputs, Table};
use crate::workers::scan;

pub struct GapRow {
    pub n: usize,
    pub rapidity_gap: f64,
    pub effective_gap: f64,
    pub nonhermitian_gap: f64,
    pub kappa: f64,
    pub mixing_bound: f64,
}

pub fn gap_row(cfg: &ExperimentConfig, gc: &GapConfig, n: usize) -> CliResult<GapRow> {
    let setup = quasifree_setup(cfg, n)?;
    let rapidity = rapidity_gap(&setup.gen).context(|| format!("rapidity gap at N = {n}"))?;
    let effective = match gc.cluster_tol {
        Some(tol) => effective_rapidity_gap(&setup.gen, tol).context(|| format!("effective gap at N = {n}"))?,
        None => rapidity,
    };
    let summary = nonhermitian_summary(&setup.h, &setup.jumps).context(|| format!("non-Hermitian spectrum at N = {n}"))?;
    let bound = match mixing_bound(&summary, n, gc.eta) {
        Ok(t) => t,
        Err(Error::NoBound(_)) => f64::NAN,
        Err(e) => return Err(e).context(|| format!("mixing bound at N = {n}")),
    };
    Ok(GapRow {
        n,
        rapidity_gap: rapidity,
        effective_gap: effective,
        nonhermitian_gap: summary.gap,
        kappa: summary.kappa_v,
        mixing_bound: bound,
    })
}

#[derive(Serialize)]
struct Summary {
    fit: Option<FitRecord>,
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
    cfg.validate(Engine::QuasiFree)?;
    let gc = cfg.gap.clone().unwrap_or(GapConfig { cluster_tol: None, eta: 0.1 });
    let rows = scan(&cfg.sizes, workers, |&n| gap_row(cfg, &gc, n))?;
    let mut out = Outputs::create(&cfg.output_dir)?;
    let mut table =
        Table::new(&["n", "rapidity_gap", "effective_gap", "nonhermitian_gap", "kappa", "mixing_bound"]);
    for r in &rows {
        table.push(vec![r.n as f64, r.rapidity_gap, r.effective_gap, r.nonhermitian_gap, r.kappa, r.mixing_bound]);
    }
    out.table("gaps.csv", &table)?;
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let (name, ys): (&str, Vec<f64>) = if gc.cluster_tol.is_some() {
        ("effective_gap", rows.iter().map(|r| r.effective_gap).collect())
    } else {
        ("rapidity_gap", rows.iter().map(|r| r.rapidity_gap).collect())
    };
    out.json("summary.json", &Summary { fit: scaling_fit(&xs, &ys, Axes::LogLog, "n", name)? })?;
    out.finish("gap-scan", cfg, workers)
}
