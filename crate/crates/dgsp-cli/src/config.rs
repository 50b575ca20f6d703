// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Experiment configuration: TOML first, JSON accepted.

use std::path::{Path, PathBuf};

use dgsp_core::dense::DENSE_CAP;
use dgsp_core::filter::{default_omega_max, design_filter, time_domain_samples, FilterSource};
use dgsp_core::hamiltonians::{
    build_annni, build_cluster, build_heisenberg_field, build_random_tfim, build_tfim, build_uniform_field, Boundary,
    CouplingPreset, Pauli, PauliString, SpinHamiltonian,
};
use dgsp_core::quasifree::Integrator;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult, Context};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    /// Chain lengths to scan.
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub couplings: CouplingConfig,
    #[serde(default)]
    pub filter: FilterConfig,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sop: Option<SopConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adiabatic: Option<AdiabaticConfig>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    Tfim {
        #[serde(default = "one")]
        j: f64,
        g: f64,
        #[serde(default = "open")]
        boundary: Boundary,
    },
    Cluster {
        #[serde(default = "one")]
        j: f64,
        h1: f64,
    },
    RandomTfim {
        #[serde(default = "one")]
        j: f64,
        mean: f64,
        variance: f64,
    },
    Annni {
        j1: f64,
        j2: f64,
        gamma: f64,
        #[serde(default = "periodic")]
        boundary: Boundary,
    },
    HeisenbergField {
        #[serde(default = "one")]
        j: f64,
        xi: f64,
        g: f64,
    },
    /// `strength · Σ letter_i`; `strength = −1`, `letter = "Z"` is `−ΣZ`.
    Field {
        #[serde(default = "z_letter")]
        letter: String,
        #[serde(default = "minus_one")]
        strength: f64,
    },
}

fn open() -> Boundary {
    Boundary::Open
}

fn periodic() -> Boundary {
    Boundary::Periodic
}

fn z_letter() -> String {
    "Z".into()
}

fn minus_one() -> f64 {
    -1.0
}

impl ModelConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ModelConfig::Tfim { .. } => "tfim",
            ModelConfig::Cluster { .. } => "cluster",
            ModelConfig::RandomTfim { .. } => "random_tfim",
            ModelConfig::Annni { .. } => "annni",
            ModelConfig::HeisenbergField { .. } => "heisenberg_field",
            ModelConfig::Field { .. } => "field",
        }
    }

    pub fn build(&self, n: usize, seed: u64) -> CliResult<SpinHamiltonian> {
        let h = match self {
            ModelConfig::Tfim { j, g, boundary } => build_tfim(n, *j, *g, *boundary),
            ModelConfig::Cluster { j, h1 } => build_cluster(n, *j, *h1),
            ModelConfig::RandomTfim { j, mean, variance } => build_random_tfim(n, *j, *mean, *variance, seed),
            ModelConfig::Annni { j1, j2, gamma, boundary } => build_annni(n, *j1, *j2, *gamma, *boundary),
            ModelConfig::HeisenbergField { j, xi, g } => build_heisenberg_field(n, *j, *xi, *g),
            ModelConfig::Field { letter, strength } => {
                let l = parse_letter(letter)?;
                build_uniform_field(n, l, *strength)
            }
        };
        h.map_err(|e| CliError::Config(format!("model: {e}")))
    }
}

fn parse_letter(s: &str) -> CliResult<Pauli> {
    let mut chars = s.chars();
    match (chars.next().and_then(Pauli::from_char), chars.next()) {
        (Some(p), None) => Ok(p),
        _ => Err(CliError::Config(format!("model.letter: expected one of X, Y, Z, got `{s}`"))),
    }
}

/// Either a named preset or explicit Pauli labels such as `"X0"`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<CouplingPreset>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl CouplingConfig {
    pub fn operators(&self, n: usize) -> CliResult<Vec<PauliString>> {
        match (&self.preset, self.labels.is_empty()) {
            (Some(p), true) => p.operators(n).map_err(|e| CliError::Config(format!("couplings.preset: {e}"))),
            (None, false) => self
                .labels
                .iter()
                .map(|l| {
                    let p = PauliString::parse(l).map_err(|e| CliError::Config(format!("couplings.labels: {e}")))?;
                    match p.max_site() {
                        Some(m) if m >= n => {
                            Err(CliError::Config(format!("couplings.labels: `{l}` is outside a {n}-site chain")))
                        }
                        _ => Ok(p),
                    }
                })
                .collect(),
            (Some(_), false) => Err(CliError::Config("couplings: set either `preset` or `labels`, not both".into())),
            (None, true) => Err(CliError::Config("couplings: missing `preset` or `labels`".into())),
        }
    }

    pub fn describe(&self) -> String {
        match &self.preset {
            Some(p) => p.name().to_string(),
            None => self.labels.join(","),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub nodes: usize,
    pub truncation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterConfig {
    pub delta: f64,
    /// Defaults to twice the Hamiltonian norm bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_max: Option<f64>,
    /// Time-domain quadrature instead of the exact filter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureConfig>,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig { delta: 0.5, omega_max: None, quadrature: None }
    }
}

impl FilterConfig {
    pub fn source(&self, ham: &SpinHamiltonian) -> CliResult<FilterSource> {
        let omega_max = self.omega_max.unwrap_or_else(|| default_omega_max(ham.norm_bound()));
        let spec = design_filter(self.delta, omega_max).map_err(|e| CliError::Config(format!("filter: {e}")))?;
        match &self.quadrature {
            None => Ok(FilterSource::Exact(spec)),
            Some(q) => time_domain_samples(&spec, q.nodes, q.truncation, q.tolerance)
                .map(FilterSource::Quadrature)
                .context(|| "filter.quadrature".into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    AllUp,
    AllDown,
    MaximallyMixed,
    RandomPure,
    RandomMixed,
}

impl InitialState {
    pub fn label(self) -> &'static str {
        match self {
            InitialState::AllUp => "all_up",
            InitialState::AllDown => "all_down",
            InitialState::MaximallyMixed => "maximally_mixed",
            InitialState::RandomPure => "random_pure",
            InitialState::RandomMixed => "random_mixed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Horizon; quasi-free runs default to `tail_factor / gap`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// Step; dense runs default to the largest stable step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Number of recorded samples per trajectory.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_tail_factor")]
    pub tail_factor: f64,
    #[serde(default = "default_integrator")]
    pub integrator: Integrator,
    #[serde(default = "default_initial")]
    pub initial_state: InitialState,
    #[serde(default = "default_true")]
    pub coherent: bool,
    #[serde(default = "default_eta")]
    pub eta: f64,
}

fn default_samples() -> usize {
    400
}

fn default_tail_factor() -> f64 {
    12.0
}

fn default_integrator() -> Integrator {
    Integrator::Exact
}

fn default_initial() -> InitialState {
    InitialState::AllDown
}

fn default_true() -> bool {
    true
}

fn default_eta() -> f64 {
    0.5
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t_end: None,
            dt: None,
            samples: default_samples(),
            tail_factor: default_tail_factor(),
            integrator: default_integrator(),
            initial_state: default_initial(),
            coherent: true,
            eta: default_eta(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapConfig {
    /// When set, the scaling fit uses the gap with slow clusters of this width removed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_tol: Option<f64>,
    #[serde(default = "default_bound_eta")]
    pub eta: f64,
}

fn default_bound_eta() -> f64 {
    0.1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SopConfig {
    /// 0-based end sites `(a, b)`; defaults to the bulk window.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(usize, usize)>,
    /// Field values `h₁/J` for the ground-state sweep.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorConfig {
    /// Strength of the `Σ X_i X_{i+1}` perturbation.
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default = "default_observable")]
    pub observable: String,
    #[serde(default)]
    pub coherent: bool,
}

fn default_observable() -> String {
    "Z0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdiabaticConfig {
    /// Field of `H_init = −(h₀/2)ΣZ`.
    #[serde(default = "one")]
    pub h0: f64,
    pub asp_time: f64,
    pub dsp_time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asp_dt: Option<f64>,
    #[serde(default = "default_gap_samples")]
    pub gap_samples: usize,
    /// Spacing of recorded samples in time units.
    #[serde(default = "default_record_every")]
    pub record_every: f64,
}

fn default_gap_samples() -> usize {
    dgsp_core::adiabatic::GAP_PATH_SAMPLES
}

fn default_record_every() -> f64 {
    0.5
}

/// Which engine a subcommand drives; used to check scan sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    QuasiFree,
    Dense,
    Adiabatic,
}

/// Largest chain the quasi-free engine accepts from a config.
pub const QUASIFREE_CAP: usize = 400;
/// Largest ring the adiabatic comparison accepts.
pub const ADIABATIC_CAP: usize = DENSE_CAP;

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Reads `.json` files as JSON and everything else as TOML.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Canonical JSON used for hashing.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&serde_json::to_value(self).expect("config serializes")).expect("value serializes")
    }

    /// SHA-256 of the canonical JSON, as lowercase hex.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn validate(&self, engine: Engine) -> CliResult<()> {
        if self.sizes.is_empty() {
            return Err(CliError::Config("sizes: at least one chain length is required".into()));
        }
        let cap = match engine {
            Engine::QuasiFree => QUASIFREE_CAP,
            Engine::Dense => DENSE_CAP,
            Engine::Adiabatic => ADIABATIC_CAP,
        };
        if let Some(&n) = self.sizes.iter().find(|&&n| n == 0 || n > cap) {
            return Err(CliError::Config(format!("sizes: {n} is outside 1..={cap} for this engine")));
        }
        let r = &self.run;
        if let Some(t) = r.t_end {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("run.t_end: must be positive, got {t}")));
            }
        }
        if let Some(dt) = r.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(CliError::Config(format!("run.dt: must be positive, got {dt}")));
            }
        }
        if r.samples < 2 {
            return Err(CliError::Config("run.samples: need at least 2".into()));
        }
        if !(r.tail_factor > 0.0) {
            return Err(CliError::Config("run.tail_factor: must be positive".into()));
        }
        if !(r.eta > 0.0 && r.eta < 1.0) {
            return Err(CliError::Config(format!("run.eta: must lie in (0, 1), got {}", r.eta)));
        }
        if !(self.filter.delta > 0.0) {
            return Err(CliError::Config(format!("filter.delta: must be positive, got {}", self.filter.delta)));
        }
        for &n in &self.sizes {
            self.model.build(n, self.seed)?;
            if engine != Engine::Adiabatic {
                self.couplings.operators(n)?;
            }
        }
        Ok(())
    }
}
