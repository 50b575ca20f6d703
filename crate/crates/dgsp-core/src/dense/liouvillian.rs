// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Superoperator matrix of the Lindbladian in column-stacking convention.

use ndarray::Array1;

use super::system::DenseLindbladSystem;
use crate::error::{Error, Result};
use crate::linalg::{dagger, eig, identity, kron, CMat, C64};

/// Largest qubit count for which the `4^N × 4^N` matrix is built.
pub const LIOUVILLIAN_CAP: usize = 5;

/// `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)` with `vec` stacking columns.
pub fn liouvillian_matrix(system: &DenseLindbladSystem) -> Result<CMat> {
    if system.n > LIOUVILLIAN_CAP {
        return Err(Error::InvalidSize(format!(
            "{} qubits exceed the Liouvillian cap of {LIOUVILLIAN_CAP}",
            system.n
        )));
    }
    let d = system.dim();
    let id = identity(d);
    let mut l = CMat::zeros((d * d, d * d));
    if system.include_coherent {
        let h = &system.hmat;
        let comm = kron(&id, h) - kron(&h.t().to_owned(), &id);
        l = l + comm.mapv(|z| C64::new(0.0, -1.0) * z);
    }
    for k in &system.jumps {
        let k = k.to_dense();
        let kdk = dagger(&k).dot(&k);
        l = l + kron(&k.mapv(|z| z.conj()), &k)
            - kron(&id, &kdk).mapv(|z| z * 0.5)
            - kron(&kdk.t().to_owned(), &id).mapv(|z| z * 0.5);
    }
    Ok(l)
}

/// Eigenvalues of the Liouvillian sorted by decreasing real part.
pub fn liouvillian_spectrum(system: &DenseLindbladSystem) -> Result<Array1<C64>> {
    let (vals, _) = eig(&liouvillian_matrix(system)?)?;
    let mut v = vals.to_vec();
    v.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    Ok(Array1::from(v))
}

/// `−max Re λ` over eigenvalues with `|λ| > zero_tol`.
pub fn liouvillian_gap(spectrum: &Array1<C64>, zero_tol: f64) -> Option<f64> {
    spectrum.iter().filter(|z| z.norm() > zero_tol).map(|z| -z.re).reduce(f64::min)
}

/// Stacks the columns of `rho`.
pub fn vectorize(rho: &CMat) -> Array1<C64> {
    rho.t().iter().cloned().collect()
}

pub fn unvectorize(v: &Array1<C64>, d: usize) -> CMat {
    CMat::from_shape_fn((d, d), |(i, j)| v[j * d + i])
}
