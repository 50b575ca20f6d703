// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Density matrices and the distance measures used for mixing times.

use ndarray::Array1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{dagger, eigh, eigvalsh, hermitian_part, max_abs, singular_values, trace, CMat, C64};

/// Largest qubit count accepted by the dense engine.
pub const DENSE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    pub rho: CMat,
    pub n: usize,
}

fn qubits_of(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::Shape(format!("dimension {dim} is not a power of two")));
    }
    Ok(dim.trailing_zeros() as usize)
}

impl DensityMatrix {
    /// Checks shape, Hermiticity, unit trace and positivity.
    pub fn new(rho: CMat) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::Shape("density matrix must be square".into()));
        }
        let n = qubits_of(rho.nrows())?;
        let d = DensityMatrix { rho, n };
        d.validate()?;
        Ok(d)
    }

    pub fn pure(psi: &Array1<C64>) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InconsistentState(format!("state vector has norm {norm}")));
        }
        let n = qubits_of(psi.len())?;
        let rho = CMat::from_shape_fn((psi.len(), psi.len()), |(i, j)| psi[i] * psi[j].conj());
        Ok(DensityMatrix { rho, n })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let d = 1usize << n;
        let mut rho = CMat::zeros((d, d));
        for i in 0..d {
            rho[[i, i]] = C64::new(1.0 / d as f64, 0.0);
        }
        DensityMatrix { rho, n }
    }

    /// Computational-basis state; bit `n−1−j` of `bits` is site `j`.
    pub fn basis(n: usize, bits: usize) -> Self {
        let d = 1usize << n;
        let mut rho = CMat::zeros((d, d));
        rho[[bits, bits]] = C64::new(1.0, 0.0);
        DensityMatrix { rho, n }
    }

    /// `|0…0⟩`, every spin with `Z = +1`.
    pub fn all_up(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// `|1…1⟩`, every spin with `Z = −1`.
    pub fn all_down(n: usize) -> Self {
        Self::basis(n, (1usize << n) - 1)
    }

    /// Haar-random pure state from a seeded Gaussian vector.
    pub fn random_pure(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 1usize << n;
        let v: Array1<C64> = (0..d)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C64::new(re, im)
            })
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Self::pure(&v.mapv(|z| z / norm)).expect("normalized by construction")
    }

    /// Random mixed state `GG†/Tr GG†` with a square Ginibre `G`.
    pub fn random_mixed(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 1usize << n;
        let g = CMat::from_shape_fn((d, d), |_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        });
        let m = g.dot(&dagger(&g));
        let t = trace(&m).re;
        DensityMatrix { rho: m.mapv(|z| z / t), n }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn validate(&self) -> Result<()> {
        let herm = max_abs(&(&self.rho - &dagger(&self.rho)));
        if herm > 1e-10 {
            return Err(Error::InconsistentState(format!("ρ − ρ† has entries of size {herm:.2e}")));
        }
        let tr = trace(&self.rho);
        if (tr - 1.0).norm() > 1e-10 {
            return Err(Error::InconsistentState(format!("Tr ρ = {tr}")));
        }
        let low = self.min_eigenvalue()?;
        if low < -1e-8 {
            return Err(Error::InconsistentState(format!("ρ has eigenvalue {low:.2e}")));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eigvalsh(&hermitian_part(&self.rho))?[0])
    }

    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Tr[Oρ]`.
    pub fn expectation(&self, o: &CMat) -> C64 {
        o.iter().zip(self.rho.t().iter()).map(|(a, b)| a * b).sum()
    }
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &CMat, sigma: &CMat) -> Result<f64> {
    Ok(0.5 * singular_values(&(rho - sigma))?.sum())
}

/// `√⟨ψ|ρ|ψ⟩`.
pub fn fidelity_pure(rho: &CMat, psi: &Array1<C64>) -> f64 {
    let v = rho.dot(psi);
    psi.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum::<C64>().re.max(0.0).sqrt()
}

/// Uhlmann fidelity `Tr√(√ρ σ √ρ)`; the pure-state formula when `σ` has unit purity.
pub fn fidelity(rho: &CMat, sigma: &CMat) -> Result<f64> {
    let purity: f64 = sigma.iter().map(|z| z.norm_sqr()).sum();
    if (purity - 1.0).abs() < 1e-12 {
        let (_, v) = eigh(&hermitian_part(sigma))?;
        let psi = v.column(v.ncols() - 1).to_owned();
        return Ok(fidelity_pure(rho, &psi));
    }
    let (l, v) = eigh(&hermitian_part(rho))?;
    let mut s = v.clone();
    for (mut col, &x) in s.columns_mut().into_iter().zip(l.iter()) {
        let r = x.max(0.0).sqrt();
        col.mapv_inplace(|z| z * r);
    }
    let sqrt_rho = s.dot(&dagger(&v));
    let m = sqrt_rho.dot(sigma).dot(&sqrt_rho);
    Ok(eigvalsh(&hermitian_part(&m))?.iter().map(|x| x.max(0.0).sqrt()).sum())
}
