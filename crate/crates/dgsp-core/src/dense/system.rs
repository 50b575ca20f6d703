// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense Lindbladians built from exactly diagonalized Hamiltonians.

use ndarray::{Array1, Array2};

use super::operator::Operator;
use super::state::DENSE_CAP;
use crate::error::{Error, Result};
use crate::filter::{FilterSource, FilterSpec, FilterTable};
use crate::hamiltonians::{pauli_matrix, PauliString, SpinHamiltonian};
use crate::linalg::{dagger, eigh, max_abs, CMat, C64};

/// Entries below this magnitude are dropped from jump operators.
pub const JUMP_DROP_TOL: f64 = 1e-14;

/// `U (F ∘ U†AU) U†` with `F_ij = weight(λ_i − λ_j)`.
fn energy_filtered(eigvals: &Array1<f64>, eigvecs: &CMat, a: &CMat, weight: impl Fn(f64) -> C64) -> CMat {
    let ae = dagger(eigvecs).dot(a).dot(eigvecs);
    let n = eigvals.len();
    let filtered = Array2::from_shape_fn((n, n), |(i, j)| ae[[i, j]] * weight(eigvals[i] - eigvals[j]));
    eigvecs.dot(&filtered).dot(&dagger(eigvecs))
}

/// `K = Σ_ij f̂(λ_i − λ_j) |ψ_i⟩⟨ψ_i|A|ψ_j⟩⟨ψ_j|`.
pub fn build_jump_exact(eigvals: &Array1<f64>, eigvecs: &CMat, a: &CMat, spec: &FilterSpec) -> CMat {
    energy_filtered(eigvals, eigvecs, a, |w| C64::new(spec.eval(w), 0.0))
}

/// `K = Σ_j p_j f(s_j) e^{iHs_j} A e^{−iHs_j}`.
///
/// In the eigenbasis each conjugation multiplies `⟨ψ_i|A|ψ_j⟩` by `e^{i(λ_i−λ_j)s}`, so
/// the weighted sum is the filter reconstruction evaluated at `λ_i − λ_j`.
pub fn build_jump_quadrature(eigvals: &Array1<f64>, eigvecs: &CMat, a: &CMat, table: &FilterTable) -> CMat {
    if table.is_empty() {
        return CMat::zeros(a.raw_dim());
    }
    energy_filtered(eigvals, eigvecs, a, |w| table.reconstruct(w))
}

/// Jump operators, Hamiltonian and eigendata of a dense Lindbladian.
#[derive(Clone, Debug)]
pub struct DenseLindbladSystem {
    pub n: usize,
    pub hmat: CMat,
    pub eigvals: Array1<f64>,
    pub eigvecs: CMat,
    pub jumps: Vec<Operator>,
    pub jump_labels: Vec<String>,
    pub include_coherent: bool,
    /// `−iH·[coherent] − ½ΣK†K`.
    effective: Operator,
}

impl DenseLindbladSystem {
    /// Diagonalizes `ham` and filters each coupling operator.
    pub fn new(
        ham: &SpinHamiltonian,
        couplings: &[PauliString],
        filter: &FilterSource,
        include_coherent: bool,
    ) -> Result<Self> {
        if ham.n_sites > DENSE_CAP {
            return Err(Error::InvalidSize(format!("{} qubits exceed the dense cap of {DENSE_CAP}", ham.n_sites)));
        }
        let hmat = ham.dense_matrix()?;
        let (eigvals, eigvecs) = eigh(&hmat)?;
        let mut jumps = Vec::with_capacity(couplings.len());
        for c in couplings {
            let a = pauli_matrix(c, ham.n_sites)?;
            let k = match filter {
                FilterSource::Exact(spec) => build_jump_exact(&eigvals, &eigvecs, &a, spec),
                FilterSource::Quadrature(table) => build_jump_quadrature(&eigvals, &eigvecs, &a, table),
            };
            jumps.push(k);
        }
        let labels = couplings.iter().map(|c| c.label()).collect();
        Self::assemble(ham.n_sites, hmat, eigvals, eigvecs, jumps, labels, include_coherent)
    }

    /// System from explicit matrices.
    pub fn from_parts(hmat: CMat, jumps: Vec<CMat>, include_coherent: bool) -> Result<Self> {
        let dim = hmat.nrows();
        if dim == 0 || !dim.is_power_of_two() || !hmat.is_square() {
            return Err(Error::Shape("Hamiltonian must be square with power-of-two dimension".into()));
        }
        if jumps.iter().any(|k| k.dim() != hmat.dim()) {
            return Err(Error::Shape("jump and Hamiltonian dimensions differ".into()));
        }
        let (eigvals, eigvecs) = eigh(&hmat)?;
        let labels = (0..jumps.len()).map(|i| format!("K{i}")).collect();
        Self::assemble(dim.trailing_zeros() as usize, hmat, eigvals, eigvecs, jumps, labels, include_coherent)
    }

    fn assemble(
        n: usize,
        hmat: CMat,
        eigvals: Array1<f64>,
        eigvecs: CMat,
        jumps: Vec<CMat>,
        jump_labels: Vec<String>,
        include_coherent: bool,
    ) -> Result<Self> {
        let scale = max_abs(&hmat).max(1.0);
        let recon = eigvecs.dot(&Array2::from_diag(&eigvals.mapv(|x| C64::new(x, 0.0)))).dot(&dagger(&eigvecs));
        if max_abs(&(&recon - &hmat)) > 1e-9 * scale {
            return Err(Error::Linalg("eigendecomposition does not reproduce H".into()));
        }
        let jumps: Vec<Operator> = jumps.into_iter().map(|k| Operator::from_dense(k, JUMP_DROP_TOL)).collect();
        let dim = hmat.nrows();
        let mut g = CMat::zeros((dim, dim));
        for k in &jumps {
            g = g + k.gram();
        }
        g.mapv_inplace(|z| -0.5 * z);
        if include_coherent {
            g = g + hmat.mapv(|z| C64::new(0.0, -1.0) * z);
        }
        let effective = Operator::from_dense(g, 0.0);
        Ok(DenseLindbladSystem { n, hmat, eigvals, eigvecs, jumps, jump_labels, include_coherent, effective })
    }

    pub fn dim(&self) -> usize {
        self.hmat.nrows()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigvals[0]
    }

    pub fn ground_state(&self) -> Array1<C64> {
        self.eigvecs.column(0).to_owned()
    }

    /// `λ₁ − λ₀`.
    pub fn spectral_gap(&self) -> f64 {
        if self.eigvals.len() < 2 {
            return f64::INFINITY;
        }
        self.eigvals[1] - self.eigvals[0]
    }

    /// `max|λ|`.
    pub fn hamiltonian_norm(&self) -> f64 {
        self.eigvals.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// `‖H‖ + Σ‖K_a‖²`, the stiffness scale entering the step-size condition.
    pub fn rate_bound(&self) -> Result<f64> {
        let mut s = self.hamiltonian_norm();
        for k in &self.jumps {
            s += k.norm()?.powi(2);
        }
        Ok(s)
    }

    /// Projector onto eigenstates within `tol` of the ground energy and its rank.
    pub fn ground_projector(&self, tol: f64) -> (CMat, usize) {
        ground_manifold_from_eigen(&self.eigvals, &self.eigvecs, tol)
    }

    /// `−i[H,ρ]·[coherent] + Σ_a (K_a ρ K_a† − ½{K_a†K_a, ρ})`.
    pub fn rhs(&self, rho: &CMat) -> CMat {
        let g = self.effective.mul(rho);
        let mut out = &g + &dagger(&g);
        for k in &self.jumps {
            let kr = k.mul(rho);
            out = out + k.mul_dagger_right(&kr);
        }
        out
    }

    /// Heisenberg-picture generator `i[H,O]·[coherent] + Σ_a (K_a† O K_a − ½{K_a†K_a, O})`.
    pub fn adjoint_rhs(&self, o: &CMat) -> CMat {
        // G†O + OG with G the effective operator, plus the sandwich terms.
        let gd = self.effective.dagger();
        let mut out = gd.mul(o) + gd.mul_dagger_right(o);
        for k in &self.jumps {
            let kd = k.dagger();
            let ok = kd.mul_dagger_right(o);
            out = out + kd.mul(&ok);
        }
        out
    }
}

/// Projector onto eigenvectors with `λ ≤ λ₀ + tol` and their number.
pub fn ground_manifold_from_eigen(eigvals: &Array1<f64>, eigvecs: &CMat, tol: f64) -> (CMat, usize) {
    let e0 = eigvals[0];
    let dim = eigvals.iter().filter(|&&x| x <= e0 + tol).count().max(1);
    let v = eigvecs.slice(ndarray::s![.., ..dim]).to_owned();
    (v.dot(&dagger(&v)), dim)
}

/// Free function form of [`DenseLindbladSystem::rhs`].
pub fn lindblad_rhs(system: &DenseLindbladSystem, rho: &CMat) -> Result<CMat> {
    if rho.dim() != system.hmat.dim() {
        return Err(Error::Shape("ρ does not match the system dimension".into()));
    }
    Ok(system.rhs(rho))
}
