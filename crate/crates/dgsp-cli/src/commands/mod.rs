// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! One module per subcommand.

pub mod adiabatic;
pub mod dense;
pub mod fit;
pub mod gap;
pub mod oscillator;
pub mod plot;
pub mod quasifree;
pub mod sop;

use dgsp_core::fit::{fit_scaling, Axes, ScalingFit};
use dgsp_core::hamiltonians::{jordan_wigner, MajoranaQuadratic};
use dgsp_core::quasifree::{
    build_generator_with, jumps_for_couplings, CovarianceState, LinearJump, QuasiFreeGenerator,
};
use serde::Serialize;

use crate::config::{ExperimentConfig, InitialState};
use crate::error::{CliError, CliResult, Context};

/// Scaling fits need at least this many points.
pub const MIN_FIT_POINTS: usize = 4;

/// Everything the quasi-free engine needs for one chain length.
pub(crate) struct QuasiFreeSetup {
    pub h: MajoranaQuadratic,
    pub jumps: Vec<LinearJump>,
    pub gen: QuasiFreeGenerator,
}

pub(crate) fn quasifree_setup(cfg: &ExperimentConfig, n: usize) -> CliResult<QuasiFreeSetup> {
    let ham = cfg.model.build(n, cfg.seed)?;
    let h = jordan_wigner(&ham).context(|| format!("{} model at N = {n}", cfg.model.name()))?;
    let filter = cfg.filter.source(&ham)?;
    let ops = cfg.couplings.operators(n)?;
    let jumps = jumps_for_couplings(&h, &ops, &filter).context(|| format!("jumps at N = {n}"))?;
    let gen = build_generator_with(&h, &jumps, cfg.run.coherent).context(|| format!("generator at N = {n}"))?;
    Ok(QuasiFreeSetup { h, jumps, gen })
}

pub(crate) fn initial_covariance(state: InitialState, n: usize) -> CliResult<CovarianceState> {
    match state {
        InitialState::AllDown => Ok(CovarianceState::all_down(n)),
        InitialState::AllUp => Ok(CovarianceState::product_state(&vec![false; n])),
        InitialState::MaximallyMixed => Ok(CovarianceState::maximally_mixed(n)),
        other => Err(CliError::Config(format!(
            "run.initial_state: `{}` is not a Gaussian state; use all_up, all_down or maximally_mixed",
            other.label()
        ))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitRecord {
    pub x: String,
    pub y: String,
    pub axes: Axes,
    #[serde(flatten)]
    pub fit: ScalingFit,
}

/// Fits `ys` against `xs`, skipping non-finite or nonpositive pairs; `None` with too few points.
pub(crate) fn scaling_fit(xs: &[f64], ys: &[f64], axes: Axes, x: &str, y: &str) -> CliResult<Option<FitRecord>> {
    let (px, py): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(ys)
        .filter(|(a, b)| a.is_finite() && b.is_finite() && **a > 0.0 && (axes == Axes::SemiLogX || **b > 0.0))
        .map(|(a, b)| (*a, *b))
        .unzip();
    if px.len() < MIN_FIT_POINTS {
        return Ok(None);
    }
    let fit = fit_scaling(&px, &py, axes).context(|| format!("fit of {y} against {x}"))?;
    Ok(Some(FitRecord { x: x.into(), y: y.into(), axes, fit }))
}

/// Indices `0, s, 2s, …` plus the last one, giving about `samples` points out of `steps + 1`.
pub(crate) fn stride_for(steps: usize, samples: usize) -> usize {
    (steps / samples.max(1)).max(1)
}
