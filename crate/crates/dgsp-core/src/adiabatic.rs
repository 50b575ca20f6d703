// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Adiabatic preparation along `H(s) = (1−s)H_init + sH_target` and the
//! dissipative alternative for translation-invariant chains.

use std::collections::BTreeMap;

use ndarray::{s, Array1};
use serde::{Deserialize, Serialize};

use crate::dense::{DensityMatrix, SectorLindblad, SymmetryBasis, MANIFOLD_TOL};
use crate::error::{Error, Result};
use crate::filter::{design_filter, FilterSource};
use crate::hamiltonians::{build_uniform_field, pauli_matrix, Pauli, PauliString, SpinHamiltonian};
use crate::linalg::{dagger, eigh, eigvalsh, CMat, C64};

/// Default number of `s` samples for [`gap_path`].
pub const GAP_PATH_SAMPLES: usize = 201;
/// Largest admissible `dt·max_s‖H(s)‖`.
pub const ASP_STEP_SAFETY: f64 = 0.1;
/// Largest tolerated drift of `‖ψ‖` from one.
pub const NORM_DRIFT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    /// `s = t/T`.
    Linear,
    /// `s = 3u² − 2u³` with `u = t/T`.
    Cubic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub total_time: f64,
    pub kind: ScheduleKind,
}

impl Schedule {
    pub fn linear(total_time: f64) -> Result<Self> {
        let s = Schedule { total_time, kind: ScheduleKind::Linear };
        s.validate()?;
        Ok(s)
    }

    pub fn s_of_t(&self, t: f64) -> f64 {
        let u = (t / self.total_time).clamp(0.0, 1.0);
        match self.kind {
            ScheduleKind::Linear => u,
            ScheduleKind::Cubic => u * u * (3.0 - 2.0 * u),
        }
    }

    /// Positive `T`, endpoints `s(0) = 0`, `s(T) = 1`, monotone on 1000 samples.
    pub fn validate(&self) -> Result<()> {
        if !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return Err(Error::InvalidArgument(format!("total time must be positive, got {}", self.total_time)));
        }
        if self.s_of_t(0.0) != 0.0 || (self.s_of_t(self.total_time) - 1.0).abs() > 1e-15 {
            return Err(Error::InvalidArgument("schedule must run from s = 0 to s = 1".into()));
        }
        let samples: Vec<f64> = (0..=1000).map(|i| self.s_of_t(self.total_time * i as f64 / 1000.0)).collect();
        if samples.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidArgument("schedule is not monotone".into()));
        }
        Ok(())
    }
}

/// Projector onto eigenstates with `λ ≤ λ₀ + tol`, its rank, and the gap above it.
pub fn ground_manifold(hmat: &CMat, tol: f64) -> Result<(CMat, usize, f64)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("manifold tolerance must be positive, got {tol}")));
    }
    let (vals, vecs) = eigh(hmat)?;
    let e0 = vals[0];
    let dim = vals.iter().filter(|&&x| x <= e0 + tol).count();
    let gap = vals.get(dim).map_or(f64::INFINITY, |e| e - e0);
    let v = vecs.slice(s![.., ..dim]).to_owned();
    Ok((v.dot(&dagger(&v)), dim, gap))
}

/// Manifold dimension and effective gap from a full list of eigenvalues.
fn manifold_from_levels(levels: &mut [f64], tol: f64) -> (usize, f64) {
    levels.sort_by(f64::total_cmp);
    let e0 = levels[0];
    let dim = levels.iter().filter(|&&x| x <= e0 + tol).count();
    (dim, levels.get(dim).map_or(f64::INFINITY, |e| e - e0))
}

/// `V† H V` using the matrix-free action of `H`, so the full matrix is never formed.
pub fn restrict(ham: &SpinHamiltonian, v: &CMat) -> CMat {
    let mut hv = CMat::zeros(v.raw_dim());
    for (c, col) in v.columns().into_iter().enumerate() {
        hv.column_mut(c).assign(&ham.apply(&col.to_owned()));
    }
    dagger(v).dot(&hv)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GapPath {
    pub s: Vec<f64>,
    /// Energy of the first level above the ground manifold, relative to `λ₀`.
    pub gap: Vec<f64>,
    pub manifold_dim: Vec<usize>,
}

/// Effective gap and manifold dimension of `H(s)` on a uniform `s` grid.
///
/// With a symmetry basis the levels are collected sector by sector.
pub fn gap_path(
    h_init: &SpinHamiltonian,
    h_target: &SpinHamiltonian,
    samples: usize,
    tol: f64,
    basis: Option<&SymmetryBasis>,
) -> Result<GapPath> {
    if samples < 2 {
        return Err(Error::InvalidArgument("gap path needs at least two samples".into()));
    }
    let grid: Vec<f64> = (0..samples).map(|i| i as f64 / (samples - 1) as f64).collect();
    gap_path_at(h_init, h_target, &grid, tol, basis)
}

/// [`gap_path`] on an explicit list of `s` values.
pub fn gap_path_at(
    h_init: &SpinHamiltonian,
    h_target: &SpinHamiltonian,
    s_values: &[f64],
    tol: f64,
    basis: Option<&SymmetryBasis>,
) -> Result<GapPath> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("manifold tolerance must be positive, got {tol}")));
    }
    if h_init.n_sites != h_target.n_sites {
        return Err(Error::Shape("initial and target Hamiltonians differ in size".into()));
    }
    let blocks: Vec<(CMat, CMat)> = match basis {
        Some(basis) => basis
            .sectors
            .iter()
            .map(|sb| (restrict(h_init, &sb.v), restrict(h_target, &sb.v)))
            .collect(),
        None => vec![(h_init.dense_matrix()?, h_target.dense_matrix()?)],
    };
    let mut out = GapPath::default();
    for &s in s_values {
        let mut levels = Vec::new();
        for (ha, hb) in &blocks {
            let h = ha.mapv(|z| z * (1.0 - s)) + hb.mapv(|z| z * s);
            levels.extend(eigvalsh(&h)?.iter().cloned());
        }
        let (dim, gap) = manifold_from_levels(&mut levels, tol);
        out.s.push(s);
        out.gap.push(gap);
        out.manifold_dim.push(dim);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct AspTrace {
    pub times: Vec<f64>,
    pub s: Vec<f64>,
    /// `⟨ψ(t)|Π|ψ(t)⟩` for the ground manifold `Π` of the target.
    pub overlap: Vec<f64>,
    pub observables: BTreeMap<String, Vec<f64>>,
    pub max_norm_drift: f64,
    pub dt: f64,
}

/// `max|λ|` of a Hermitian matrix.
pub fn spectral_radius(h: &CMat) -> Result<f64> {
    Ok(eigvalsh(h)?.iter().map(|x| x.abs()).fold(0.0, f64::max))
}

/// Midpoint eigen-exponential integration of `i∂_tψ = H(s(t))ψ`.
///
/// All matrices live in one space (the full register or an invariant subspace);
/// `target_ground_energy` fixes the manifold `λ ≤ λ₀ + tol` of the target.
#[allow(clippy::too_many_arguments)]
pub fn asp_run(
    h_init: &CMat,
    h_target: &CMat,
    target_ground_energy: f64,
    schedule: &Schedule,
    dt: f64,
    psi0: &Array1<C64>,
    observables: &[(String, CMat)],
    stride: usize,
) -> Result<AspTrace> {
    schedule.validate()?;
    let d = psi0.len();
    if h_init.dim() != (d, d) || h_target.dim() != (d, d) {
        return Err(Error::Shape("state and Hamiltonians differ in size".into()));
    }
    let norm0 = psi0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm0 - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("initial state has norm {norm0}")));
    }
    if stride == 0 || !(dt > 0.0) {
        return Err(Error::InvalidArgument("dt must be positive and stride nonzero".into()));
    }
    let bound = spectral_radius(h_init)?.max(spectral_radius(h_target)?);
    if dt * bound > ASP_STEP_SAFETY + 1e-12 {
        return Err(Error::StepSize(format!(
            "dt = {dt} exceeds {ASP_STEP_SAFETY}/max‖H(s)‖ = {:.4e}",
            ASP_STEP_SAFETY / bound
        )));
    }
    let (tvals, tvecs) = eigh(h_target)?;
    let ground: Vec<usize> = (0..d).filter(|&i| tvals[i] <= target_ground_energy + MANIFOLD_TOL).collect();
    let manifold: Vec<Array1<C64>> = ground.iter().map(|&i| tvecs.column(i).to_owned()).collect();
    let overlap_of = |psi: &Array1<C64>| -> f64 {
        manifold.iter().map(|g| g.iter().zip(psi.iter()).map(|(a, b)| a.conj() * b).sum::<C64>().norm_sqr()).sum()
    };
    let expect = |o: &CMat, psi: &Array1<C64>| -> f64 {
        psi.iter().zip(o.dot(psi).iter()).map(|(a, b)| a.conj() * b).sum::<C64>().re
    };
    let mut trace = AspTrace { dt, ..Default::default() };
    for (name, _) in observables {
        trace.observables.insert(name.clone(), Vec::new());
    }
    let record = |trace: &mut AspTrace, psi: &Array1<C64>, t: f64| {
        trace.times.push(t);
        trace.s.push(schedule.s_of_t(t));
        trace.overlap.push(overlap_of(psi));
        for (name, o) in observables {
            trace.observables.get_mut(name).expect("inserted above").push(expect(o, psi));
        }
    };
    let steps = (schedule.total_time / dt).round() as usize;
    let h = schedule.total_time / steps.max(1) as f64;
    let mut psi = psi0.clone();
    record(&mut trace, &psi, 0.0);
    for k in 0..steps {
        let s = schedule.s_of_t((k as f64 + 0.5) * h);
        let hm = h_init.mapv(|z| z * (1.0 - s)) + h_target.mapv(|z| z * s);
        let (vals, vecs) = eigh(&hm)?;
        let coeffs = dagger(&vecs).dot(&psi);
        let rotated: Array1<C64> = coeffs.iter().zip(vals.iter()).map(|(c, &l)| c * C64::from_polar(1.0, -l * h)).collect();
        psi = vecs.dot(&rotated);
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let drift = (norm - 1.0).abs();
        trace.max_norm_drift = trace.max_norm_drift.max(drift);
        if drift > NORM_DRIFT_TOL {
            return Err(Error::Integrator(format!("‖ψ‖ drifted by {drift:.2e} at step {}", k + 1)));
        }
        if (k + 1) % stride == 0 || k + 1 == steps {
            record(&mut trace, &psi, (k + 1) as f64 * h);
        }
    }
    Ok(trace)
}

/// `max − min` of `values` over samples with `t ≥ (1 − window)·t_last`.
pub fn late_oscillation(times: &[f64], values: &[f64], window: f64) -> f64 {
    let Some(&t_last) = times.last() else {
        return 0.0;
    };
    let from = (1.0 - window) * t_last;
    let late: Vec<f64> = times.iter().zip(values).filter(|(t, _)| **t >= from).map(|(_, v)| *v).collect();
    let hi = late.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = late.iter().cloned().fold(f64::INFINITY, f64::min);
    if late.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// Number of direction reversals in `values` whose swing exceeds `min_swing`.
///
/// Wiggles smaller than `min_swing` are ignored, so a noisy monotone series
/// counts zero.
pub fn count_swings(values: &[f64], min_swing: f64) -> usize {
    let Some(&first) = values.first() else {
        return 0;
    };
    let (mut hi, mut lo) = (first, first);
    let mut rising: Option<bool> = None;
    let mut swings = 0;
    for &v in &values[1..] {
        match rising {
            None => {
                hi = hi.max(v);
                lo = lo.min(v);
                if hi - lo > min_swing {
                    rising = Some(v == hi);
                    (hi, lo) = (v, v);
                }
            }
            Some(true) => {
                if v > hi {
                    hi = v;
                } else if hi - v > min_swing {
                    swings += 1;
                    rising = Some(false);
                    lo = v;
                }
            }
            Some(false) => {
                if v < lo {
                    lo = v;
                } else if v - lo > min_swing {
                    swings += 1;
                    rising = Some(true);
                    hi = v;
                }
            }
        }
    }
    swings
}

/// True when `values` is monotone (in either direction) on `t ≥ t_from`.
pub fn monotone_after(times: &[f64], values: &[f64], t_from: f64, slack: f64) -> bool {
    let tail: Vec<f64> = times.iter().zip(values).filter(|(t, _)| **t >= t_from).map(|(_, v)| *v).collect();
    tail.windows(2).all(|w| w[1] >= w[0] - slack) || tail.windows(2).all(|w| w[1] <= w[0] + slack)
}

/// `(1/4L) Σ_i Z_i Z_{i+r}` on a ring, as a Pauli sum.
pub fn zz_order_operator(l: usize, range: usize) -> Result<SpinHamiltonian> {
    if l == 0 || range == 0 || range >= l {
        return Err(Error::InvalidArgument(format!("range {range} on a ring of {l} sites")));
    }
    let mut h = SpinHamiltonian::new(l);
    for i in 0..l {
        h.push(PauliString::from_pairs(&[(i, Pauli::Z), ((i + range) % l, Pauli::Z)], 1.0 / (4.0 * l as f64))?)?;
    }
    Ok(h)
}

/// Dense form of [`zz_order_operator`].
pub fn zz_order_parameter(l: usize, range: usize) -> Result<CMat> {
    zz_order_operator(l, range)?.dense_matrix()
}

/// `H_init = −(h₀/2) ΣZ_i`, whose ground state is `|0…0⟩`.
pub fn asp_initial_hamiltonian(l: usize, h0: f64) -> Result<SpinHamiltonian> {
    build_uniform_field(l, Pauli::Z, -h0 / 2.0)
}

/// Result of an adiabatic run on a translation-invariant ring, reduced to zero momentum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AspOutcome {
    pub trace: AspTrace,
    pub target_ground_energy: f64,
}

/// Adiabatic run from `|0…0⟩` restricted to the zero-momentum sector, which
/// contains the initial state and is invariant under every `H(s)`.
pub fn asp_run_ring(
    h_init: &SpinHamiltonian,
    h_target: &SpinHamiltonian,
    schedule: &Schedule,
    dt: Option<f64>,
    record_every: f64,
) -> Result<AspOutcome> {
    let l = h_target.n_sites;
    let basis = SymmetryBasis::translation(l)?;
    let mut e0 = f64::INFINITY;
    for sb in &basis.sectors {
        e0 = e0.min(eigvalsh(&restrict(h_target, &sb.v))?[0]);
    }
    let v = &basis.sectors[0].v;
    let ha = restrict(h_init, v);
    let ht = restrict(h_target, v);
    let mut full0 = Array1::from_elem(1 << l, C64::new(0.0, 0.0));
    full0[0] = C64::new(1.0, 0.0);
    let psi0 = dagger(v).dot(&full0);
    let obs = vec![
        ("m1".to_string(), restrict(&zz_order_operator(l, 1)?, v)),
        ("m2".to_string(), restrict(&zz_order_operator(l, 2)?, v)),
    ];
    let bound = spectral_radius(&ha)?.max(spectral_radius(&ht)?);
    let dt = dt.unwrap_or(ASP_STEP_SAFETY / bound);
    let stride = ((record_every / dt).round() as usize).max(1);
    let trace = asp_run(&ha, &ht, e0, schedule, dt, &psi0, &obs, stride)?;
    Ok(AspOutcome { trace, target_ground_energy: e0 })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DspOutcome {
    pub times: Vec<f64>,
    pub overlap: Vec<f64>,
    pub energy: Vec<f64>,
    pub m1: Vec<f64>,
    pub m2: Vec<f64>,
    /// `(m₁, m₂)` in each ground state of the target.
    pub manifold_values: Vec<(f64, f64)>,
    pub manifold_dim: usize,
    pub ground_energy: f64,
    pub dt: f64,
    pub trace_drift_rate: f64,
}

/// Exact filter with gap `delta` and `ω_max = 2‖H‖`.
pub fn ring_filter(ham: &SpinHamiltonian, delta: f64) -> Result<FilterSource> {
    let norm = spectral_radius(&ham.dense_matrix()?)?;
    Ok(FilterSource::Exact(design_filter(delta, 2.0 * norm)?))
}

/// Dissipative preparation on a ring with jumps built from all translates of
/// `base`, starting from `|1…1⟩`, on the translation × spin-flip sectors.
pub fn dsp_run_ring(
    ham: &SpinHamiltonian,
    base: &[PauliString],
    filter: &FilterSource,
    t_end: f64,
    dt: Option<f64>,
    record_every: f64,
) -> Result<DspOutcome> {
    let l = ham.n_sites;
    let flip: Vec<(usize, Pauli)> = (0..l).map(|i| (i, Pauli::X)).collect();
    let parity = pauli_matrix(&PauliString::from_pairs(&flip, 1.0)?, l)?;
    let basis = SymmetryBasis::translation(l)?.split_by(&parity)?;
    let red = SectorLindblad::new(ham, base, &basis, filter, true)?;
    let dt = dt.unwrap_or(crate::dense::SECTOR_STEP_SAFETY / red.jump_norm_sq);
    let stride = ((record_every / dt).round() as usize).max(1);
    let m1 = zz_order_parameter(l, 1)?;
    let m2 = zz_order_parameter(l, 2)?;
    let obs = vec![("m1".to_string(), red.observable(&m1)), ("m2".to_string(), red.observable(&m2))];
    let rho0 = DensityMatrix::all_down(l);
    let traj = red.evolve(&red.project(&rho0.rho), t_end, dt, stride, &obs)?;
    let mut manifold_values = Vec::new();
    for s in &red.sectors {
        for (a, &e) in s.energies.iter().enumerate() {
            if e <= red.ground_energy + MANIFOLD_TOL {
                let psi = s.basis.column(a);
                let ex = |o: &CMat| psi.iter().zip(o.dot(&psi).iter()).map(|(x, y)| x.conj() * y).sum::<C64>().re;
                manifold_values.push((ex(&m1), ex(&m2)));
            }
        }
    }
    Ok(DspOutcome {
        times: traj.times,
        overlap: traj.overlap,
        energy: traj.energy,
        m1: traj.observables["m1"].clone(),
        m2: traj.observables["m2"].clone(),
        manifold_values,
        manifold_dim: red.manifold_dim(),
        ground_energy: red.ground_energy,
        dt,
        trace_drift_rate: traj.trace_drift_rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::{build_annni, build_tfim, Boundary};

    #[test]
    fn schedule_validation() {
        assert!(Schedule::linear(10.0).is_ok());
        assert!(Schedule::linear(0.0).is_err());
        let c = Schedule { total_time: 2.0, kind: ScheduleKind::Cubic };
        c.validate().unwrap();
        assert!((c.s_of_t(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn stationary_when_hamiltonian_is_constant() {
        let ham = build_tfim(3, 1.0, 1.5, Boundary::Open).unwrap();
        let h = ham.dense_matrix().unwrap();
        let (vals, vecs) = eigh(&h).unwrap();
        let psi0 = vecs.column(0).to_owned();
        let sched = Schedule::linear(5.0).unwrap();
        let tr = asp_run(&h, &h, vals[0], &sched, 0.01, &psi0, &[], 50).unwrap();
        for o in &tr.overlap {
            assert!((o - 1.0).abs() < 1e-10);
        }
        assert!(tr.max_norm_drift < 1e-10);
    }

    #[test]
    fn nondegenerate_manifold_has_dimension_one() {
        let h = build_tfim(4, 1.0, 1.5, Boundary::Open).unwrap().dense_matrix().unwrap();
        let (p, dim, gap) = ground_manifold(&h, 1e-4).unwrap();
        assert_eq!(dim, 1);
        assert!(gap > 0.5);
        assert!((crate::linalg::trace(&p).re - 1.0).abs() < 1e-12);
        assert!(ground_manifold(&h, 0.0).is_err());
    }

    #[test]
    fn annni_gap_path_sectors_agree_with_full() {
        let l = 6;
        let init = asp_initial_hamiltonian(l, 1.0).unwrap();
        let target = build_annni(l, 2.0, 0.6, 0.2, Boundary::Periodic).unwrap();
        let full = gap_path(&init, &target, 11, 1e-4, None).unwrap();
        let basis = SymmetryBasis::translation(l).unwrap();
        let red = gap_path(&init, &target, 11, 1e-4, Some(&basis)).unwrap();
        assert_eq!(full.manifold_dim, red.manifold_dim);
        for (a, b) in full.gap.iter().zip(&red.gap) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(full.manifold_dim[0], 1);
    }

    #[test]
    fn swings_of_a_sine_and_a_ramp() {
        let v: Vec<f64> = (0..=1000).map(|i| (i as f64 * 0.1).sin()).collect();
        // Oracle: sin has an extremum every π; 100/π ≈ 31.8 gives 31 reversals after the first.
        assert_eq!(count_swings(&v, 0.5), 31);
        let ramp: Vec<f64> = (0..100).map(|i| i as f64 + 0.01 * (i % 2) as f64).collect();
        assert_eq!(count_swings(&ramp, 0.1), 0);
        let t: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert!(monotone_after(&t, &ramp, 0.0, 0.0));
        assert!(!monotone_after(&t, &v[..100], 0.0, 0.0));
    }

    #[test]
    fn late_oscillation_of_a_sine() {
        let t: Vec<f64> = (0..=1000).map(|i| i as f64 * 0.1).collect();
        let v: Vec<f64> = t.iter().map(|t| 0.3 + 0.1 * t.sin()).collect();
        assert!((late_oscillation(&t, &v, 0.2) - 0.2).abs() < 1e-3);
    }
}
