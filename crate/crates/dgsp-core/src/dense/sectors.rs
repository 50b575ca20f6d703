// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad evolution reduced by lattice symmetries.
//!
//! For a translation-invariant Hamiltonian and a jump set closed under
//! translation, the Lindbladian commutes with conjugation by the symmetry.
//! The sector-diagonal blocks of `ρ` then evolve on their own, and they carry
//! every expectation value of a symmetric observable.  Jumps are regrouped
//! into Fourier combinations `K̃_q = N^{-1/2} Σ_j e^{iθ_q j} K_j`, which map one
//! sector into another and leave `Σ_j K_j ρ K_j†` unchanged.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use ndarray::{s, Array1, Array2};

use super::evolve::{MANIFOLD_TOL, POSITIVITY_TOL};
use super::state::DENSE_CAP;
use crate::error::{Error, Result};
use crate::filter::FilterSource;
use crate::hamiltonians::{pauli_matrix, PauliString, SpinHamiltonian};
use crate::linalg::{dagger, eigh, eigvalsh, hermitian_part, max_abs, op_norm, trace, CMat, C64, ZERO};

/// Largest admissible `dt·Σ_j‖K_j‖²` for the sector integrator.
pub const SECTOR_STEP_SAFETY: f64 = 0.1;
/// Fourier blocks with all entries below this are dropped.
const BLOCK_DROP_TOL: f64 = 1e-13;

/// Orthonormal columns spanning one symmetry sector.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub label: String,
    pub v: CMat,
}

#[derive(Clone, Debug)]
pub struct SymmetryBasis {
    pub n: usize,
    pub sectors: Vec<SectorBasis>,
}

/// Cyclic shift of the chain by one site.
fn rotate(b: usize, n: usize) -> usize {
    (b >> 1) | ((b & 1) << (n - 1))
}

impl SymmetryBasis {
    /// A single sector holding the whole Hilbert space.
    pub fn trivial(n: usize) -> Self {
        let d = 1usize << n;
        let mut v = CMat::zeros((d, d));
        for i in 0..d {
            v[[i, i]] = C64::new(1.0, 0.0);
        }
        SymmetryBasis { n, sectors: vec![SectorBasis { label: "all".into(), v }] }
    }

    /// Momentum sectors `k = 0 … N−1` of the cyclic shift.
    pub fn translation(n: usize) -> Result<Self> {
        if n == 0 || n > DENSE_CAP + 2 {
            return Err(Error::InvalidSize(format!("translation basis for {n} sites is out of range")));
        }
        let d = 1usize << n;
        let mut seen = vec![false; d];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for r in 0..d {
            if seen[r] {
                continue;
            }
            let mut orbit = vec![r];
            seen[r] = true;
            let mut b = rotate(r, n);
            while b != r {
                seen[b] = true;
                orbit.push(b);
                b = rotate(b, n);
            }
            orbits.push(orbit);
        }
        let mut sectors = Vec::with_capacity(n);
        for k in 0..n {
            let cols: Vec<&Vec<usize>> = orbits.iter().filter(|o| (k * o.len()) % n == 0).collect();
            let mut v = CMat::zeros((d, cols.len()));
            for (c, orbit) in cols.iter().enumerate() {
                let norm = 1.0 / (orbit.len() as f64).sqrt();
                for (m, &b) in orbit.iter().enumerate() {
                    let phase = -2.0 * PI * (k * m) as f64 / n as f64;
                    v[[b, c]] = C64::from_polar(norm, phase);
                }
            }
            sectors.push(SectorBasis { label: format!("k={k}"), v });
        }
        Ok(SymmetryBasis { n, sectors })
    }

    /// Splits every sector by the ±1 eigenspaces of a commuting involution.
    pub fn split_by(self, involution: &CMat) -> Result<Self> {
        let mut sectors = Vec::new();
        for s in self.sectors {
            let p = dagger(&s.v).dot(involution).dot(&s.v);
            let (vals, vecs) = eigh(&hermitian_part(&p))?;
            if vals.iter().any(|x| (x.abs() - 1.0).abs() > 1e-8) {
                return Err(Error::InvalidArgument("operator is not an involution on this sector".into()));
            }
            let minus = vals.iter().filter(|&&x| x < 0.0).count();
            let w = s.v.dot(&vecs);
            if minus > 0 {
                sectors.push(SectorBasis { label: format!("{},-", s.label), v: w.slice(s![.., ..minus]).to_owned() });
            }
            if minus < vals.len() {
                sectors.push(SectorBasis { label: format!("{},+", s.label), v: w.slice(s![.., minus..]).to_owned() });
            }
        }
        Ok(SymmetryBasis { n: self.n, sectors })
    }

    pub fn total_dim(&self) -> usize {
        self.sectors.iter().map(|s| s.v.ncols()).sum()
    }
}

/// Diagonal energy basis of one sector.
#[derive(Clone, Debug)]
pub struct Sector {
    pub label: String,
    /// Columns are eigenvectors of `H` in the full space.
    pub basis: CMat,
    pub energies: Array1<f64>,
}

/// `B = ⟨sector to| K̃_q |sector from⟩` in the energy bases.
#[derive(Clone, Debug)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub op: CMat,
}

#[derive(Clone, Debug)]
pub struct SectorLindblad {
    pub n: usize,
    pub sectors: Vec<Sector>,
    pub transitions: Vec<Transition>,
    /// `Σ B†B` collected on each source sector.
    decay: Vec<CMat>,
    pub include_coherent: bool,
    pub ground_energy: f64,
    /// `max|λ|`.
    pub hamiltonian_norm: f64,
    /// `Σ_j ‖K_j‖²` over all translated jumps.
    pub jump_norm_sq: f64,
}

/// Block-diagonal density matrix in the sector energy bases.
#[derive(Clone, Debug)]
pub struct SectorState {
    pub blocks: Vec<CMat>,
}

/// Translate every site of `p` by `shift` on an `n`-site ring.
fn translate(p: &PauliString, shift: usize, n: usize) -> PauliString {
    let mut pairs: Vec<(usize, crate::hamiltonians::Pauli)> =
        p.sites.iter().zip(&p.letters).map(|(&s, &l)| ((s + shift) % n, l)).collect();
    pairs.sort_by_key(|x| x.0);
    PauliString::from_pairs(&pairs, p.coeff).expect("translation keeps sites distinct")
}

impl SectorLindblad {
    /// Builds the reduced Lindbladian for jumps generated by all translates of `base`.
    pub fn new(
        ham: &SpinHamiltonian,
        base: &[PauliString],
        basis: &SymmetryBasis,
        filter: &FilterSource,
        include_coherent: bool,
    ) -> Result<Self> {
        let n = ham.n_sites;
        if basis.n != n || basis.total_dim() != 1 << n {
            return Err(Error::Shape("symmetry basis does not span the Hilbert space".into()));
        }
        let hmat = ham.dense_matrix()?;
        let mut sectors = Vec::with_capacity(basis.sectors.len());
        for sb in &basis.sectors {
            let hs = dagger(&sb.v).dot(&hmat).dot(&sb.v);
            let (e, w) = eigh(&hermitian_part(&hs))?;
            sectors.push(Sector { label: sb.label.clone(), basis: sb.v.dot(&w), energies: e });
        }
        let leak = {
            let mut worst: f64 = 0.0;
            for s in &sectors {
                let hv = hmat.dot(&s.basis);
                let ev = &s.basis * &s.energies.mapv(|x| C64::new(x, 0.0));
                worst = worst.max(max_abs(&(hv - ev)));
            }
            worst
        };
        if leak > 1e-9 * max_abs(&hmat).max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "Hamiltonian is not block diagonal in the symmetry basis (residual {leak:.2e})"
            )));
        }
        let offsets: Vec<usize> = sectors
            .iter()
            .scan(0usize, |acc, s| {
                let o = *acc;
                *acc += s.energies.len();
                Some(o)
            })
            .collect();
        let dim = 1usize << n;
        let mut u = CMat::zeros((dim, dim));
        let mut energies = Array1::zeros(dim);
        for (s, &o) in sectors.iter().zip(&offsets) {
            let d = s.energies.len();
            u.slice_mut(s![.., o..o + d]).assign(&s.basis);
            energies.slice_mut(s![o..o + d]).assign(&s.energies);
        }
        let weights = Array2::from_shape_fn((dim, dim), |(i, j)| filter.value(energies[i] - energies[j]));
        let ud = dagger(&u);
        let mut transitions = Vec::new();
        let mut jump_norm_sq = 0.0;
        for b in base {
            let translates: Vec<CMat> =
                (0..n).map(|j| pauli_matrix(&translate(b, j, n), n)).collect::<Result<_>>()?;
            let k0 = &ud.dot(&translates[0]).dot(&u) * &weights;
            jump_norm_sq += n as f64 * op_norm(&k0)?.powi(2);
            for q in 0..n {
                let mut aq = CMat::zeros((dim, dim));
                for (j, a) in translates.iter().enumerate() {
                    let ph = C64::from_polar(1.0 / (n as f64).sqrt(), 2.0 * PI * (q * j) as f64 / n as f64);
                    aq.scaled_add(ph, a);
                }
                let kq = &ud.dot(&aq).dot(&u) * &weights;
                for (from, (&of, sf)) in offsets.iter().zip(&sectors).enumerate() {
                    for (to, (&ot, st)) in offsets.iter().zip(&sectors).enumerate() {
                        let blk = kq.slice(s![ot..ot + st.energies.len(), of..of + sf.energies.len()]).to_owned();
                        if max_abs(&blk) > BLOCK_DROP_TOL {
                            transitions.push(Transition { from, to, op: blk });
                        }
                    }
                }
            }
        }
        let mut decay: Vec<CMat> = sectors.iter().map(|s| CMat::zeros((s.energies.len(), s.energies.len()))).collect();
        for t in &transitions {
            decay[t.from] = &decay[t.from] + &dagger(&t.op).dot(&t.op);
        }
        let ground_energy = energies.iter().cloned().fold(f64::INFINITY, f64::min);
        let hamiltonian_norm = energies.iter().map(|x| x.abs()).fold(0.0, f64::max);
        Ok(SectorLindblad {
            n,
            sectors,
            transitions,
            decay,
            include_coherent,
            ground_energy,
            hamiltonian_norm,
            jump_norm_sq,
        })
    }

    /// Sector-diagonal blocks of a full density matrix.
    pub fn project(&self, rho: &CMat) -> SectorState {
        SectorState { blocks: self.sectors.iter().map(|s| dagger(&s.basis).dot(rho).dot(&s.basis)).collect() }
    }

    /// Blocks of a symmetric observable.
    pub fn observable(&self, o: &CMat) -> Vec<CMat> {
        self.sectors.iter().map(|s| dagger(&s.basis).dot(o).dot(&s.basis)).collect()
    }

    /// `Σ_s U_s ρ_s U_s†`.
    pub fn to_full(&self, state: &SectorState) -> CMat {
        let dim = 1usize << self.n;
        let mut out = CMat::zeros((dim, dim));
        for (s, b) in self.sectors.iter().zip(&state.blocks) {
            out = out + s.basis.dot(b).dot(&dagger(&s.basis));
        }
        out
    }

    /// Dissipative part `Σ B ρ B† − ½{Σ B†B, ρ}`.
    fn dissipator(&self, rho: &[CMat]) -> Vec<CMat> {
        let mut out: Vec<CMat> = rho
            .iter()
            .zip(&self.decay)
            .map(|(r, g)| {
                let gr = g.dot(r);
                (&gr + &dagger(&gr)).mapv(|z| -0.5 * z)
            })
            .collect();
        for t in &self.transitions {
            let m = t.op.dot(&rho[t.from]).dot(&dagger(&t.op));
            out[t.to] = &out[t.to] + &m;
        }
        out
    }

    /// Multiplies entry `(a, b)` of each block by `e^{−i(E_a−E_b)h}`.
    fn rotate_phases(&self, rho: &[CMat], h: f64) -> Vec<CMat> {
        if !self.include_coherent {
            return rho.to_vec();
        }
        rho.iter()
            .zip(&self.sectors)
            .map(|(r, s)| {
                let e = &s.energies;
                Array2::from_shape_fn(r.raw_dim(), |(a, b)| r[[a, b]] * C64::from_polar(1.0, -(e[a] - e[b]) * h))
            })
            .collect()
    }

    /// One integrating-factor RK4 step: the coherent rotation is applied exactly.
    fn step(&self, u0: &[CMat], h: f64) -> Vec<CMat> {
        let axpy = |a: &[CMat], c: f64, b: &[CMat]| -> Vec<CMat> {
            a.iter().zip(b).map(|(x, y)| x + &y.mapv(|z| z * c)).collect()
        };
        let k1 = self.dissipator(u0);
        let half_u0 = self.rotate_phases(u0, h / 2.0);
        let a = self.rotate_phases(&axpy(u0, h / 2.0, &k1), h / 2.0);
        let k2 = self.dissipator(&a);
        let b = axpy(&half_u0, h / 2.0, &k2);
        let k3 = self.dissipator(&b);
        let full_u0 = self.rotate_phases(u0, h);
        let c = axpy(&full_u0, h, &self.rotate_phases(&k3, h / 2.0));
        let k4 = self.dissipator(&c);
        let rk1 = self.rotate_phases(&k1, h);
        let rk23: Vec<CMat> = self.rotate_phases(&k2.iter().zip(&k3).map(|(x, y)| x + y).collect::<Vec<_>>(), h / 2.0);
        full_u0
            .iter()
            .enumerate()
            .map(|(i, u)| u + &(&rk1[i] + &rk23[i].mapv(|z| z * 2.0) + &k4[i]).mapv(|z| z * (h / 6.0)))
            .collect()
    }

    /// Integrates from `state0`, recording energy, ground-manifold overlap, purity
    /// and the given observables every `stride` steps.
    pub fn evolve(
        &self,
        state0: &SectorState,
        t_end: f64,
        dt: f64,
        stride: usize,
        observables: &[(String, Vec<CMat>)],
    ) -> Result<SectorTrajectory> {
        if !(dt > 0.0) || stride == 0 {
            return Err(Error::InvalidArgument("dt must be positive and stride nonzero".into()));
        }
        if dt * self.jump_norm_sq > SECTOR_STEP_SAFETY + 1e-12 {
            return Err(Error::StepSize(format!(
                "dt = {dt} exceeds {SECTOR_STEP_SAFETY}/Σ‖K‖² = {:.4e}",
                SECTOR_STEP_SAFETY / self.jump_norm_sq
            )));
        }
        if state0.blocks.len() != self.sectors.len() {
            return Err(Error::Shape("state has the wrong number of blocks".into()));
        }
        let steps = (t_end / dt).round() as usize;
        let mut traj = SectorTrajectory { ground_energy: self.ground_energy, dt, ..Default::default() };
        for (name, _) in observables {
            traj.observables.insert(name.clone(), Vec::new());
        }
        let mut rho = state0.blocks.clone();
        let mut drift = 0.0;
        self.record(&mut traj, &rho, 0.0, observables)?;
        for k in 1..=steps {
            rho = self.step(&rho, dt).iter().map(hermitian_part).collect();
            let tr: f64 = rho.iter().map(|b| trace(b).re).sum();
            drift += (tr - 1.0).abs();
            for b in rho.iter_mut() {
                b.mapv_inplace(|z| z / tr);
            }
            if k % stride == 0 || k == steps {
                self.record(&mut traj, &rho, k as f64 * dt, observables)?;
            }
        }
        traj.trace_drift_rate = if t_end > 0.0 { drift / t_end } else { 0.0 };
        Ok(traj)
    }

    fn record(
        &self,
        traj: &mut SectorTrajectory,
        rho: &[CMat],
        t: f64,
        observables: &[(String, Vec<CMat>)],
    ) -> Result<()> {
        let mut low = f64::INFINITY;
        for b in rho {
            if b.nrows() > 0 {
                low = low.min(eigvalsh(b)?[0]);
            }
        }
        if low < -POSITIVITY_TOL {
            return Err(Error::StepSize(format!("ρ has eigenvalue {low:.3e} at t = {t:.4}; reduce dt")));
        }
        let mut energy = 0.0;
        let mut overlap = 0.0;
        let mut purity = 0.0;
        for (b, s) in rho.iter().zip(&self.sectors) {
            for (a, &e) in s.energies.iter().enumerate() {
                energy += e * b[[a, a]].re;
                if e <= self.ground_energy + MANIFOLD_TOL {
                    overlap += b[[a, a]].re;
                }
            }
            purity += b.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        traj.times.push(t);
        traj.energy.push(energy);
        traj.overlap.push(overlap);
        traj.purity.push(purity);
        traj.min_eigenvalue = traj.min_eigenvalue.min(low);
        for (name, blocks) in observables {
            let v: C64 = blocks
                .iter()
                .zip(rho)
                .map(|(o, r)| o.iter().zip(r.t().iter()).map(|(a, b)| a * b).sum::<C64>())
                .sum();
            traj.observables.get_mut(name).expect("inserted above").push(v.re);
        }
        Ok(())
    }

    /// Number of eigenstates within the manifold tolerance of the ground energy.
    pub fn manifold_dim(&self) -> usize {
        self.sectors
            .iter()
            .map(|s| s.energies.iter().filter(|&&e| e <= self.ground_energy + MANIFOLD_TOL).count())
            .sum()
    }

    /// `Tr[OΠ]/dim Π` for a symmetric observable.
    pub fn manifold_average(&self, blocks: &[CMat]) -> f64 {
        let mut acc = ZERO;
        for (o, s) in blocks.iter().zip(&self.sectors) {
            for (a, &e) in s.energies.iter().enumerate() {
                if e <= self.ground_energy + MANIFOLD_TOL {
                    acc += o[[a, a]];
                }
            }
        }
        acc.re / self.manifold_dim() as f64
    }
}

#[derive(Clone, Debug)]
pub struct SectorTrajectory {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    pub overlap: Vec<f64>,
    pub purity: Vec<f64>,
    pub observables: BTreeMap<String, Vec<f64>>,
    pub ground_energy: f64,
    pub trace_drift_rate: f64,
    pub min_eigenvalue: f64,
    pub dt: f64,
}

impl Default for SectorTrajectory {
    fn default() -> Self {
        SectorTrajectory {
            times: Vec::new(),
            energy: Vec::new(),
            overlap: Vec::new(),
            purity: Vec::new(),
            observables: BTreeMap::new(),
            ground_energy: 0.0,
            trace_drift_rate: 0.0,
            min_eigenvalue: f64::INFINITY,
            dt: 0.0,
        }
    }
}
