// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Jordan–Wigner map from Pauli strings to Majorana monomials.
//!
//! Majorana operators are normalized as `{w_p, w_q} = δ_pq`.  With
//! `a_j = (Π_{k<j} Z_k) X_j` and `b_j = (Π_{k<j} Z_k) Y_j` we set
//! `w_j = a_j/√2` and `w_{j+N} = b_j/√2`, so `Z_j = −i a_j b_j = −2i w_j w_{j+N}`.

use ndarray::{s, Array1};

use super::pauli::{i_pow, Pauli, PauliString, SpinHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{dagger, eigh, max_abs, CMat, C64, ZERO};

/// Product of Majorana operators `phase · γ_{m_1} γ_{m_2} ⋯` (γ = √2 w) equal to a Pauli string.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaMonomial {
    /// Indices into `w_0 … w_{2N−1}` in product order.
    pub indices: Vec<usize>,
    pub phase: C64,
}

fn letter_code(l: Pauli) -> u8 {
    match l {
        Pauli::X => 1,
        Pauli::Y => 2,
        Pauli::Z => 3,
    }
}

/// Multiply single-site letters (0 = I, 1 = X, 2 = Y, 3 = Z); returns the new letter and a power of `i`.
fn mul_letter(a: u8, b: u8) -> (u8, u32) {
    if a == 0 || b == 0 || a == b {
        return (a ^ b, 0);
    }
    let cyclic = matches!((a, b), (1, 2) | (2, 3) | (3, 1));
    (a ^ b, if cyclic { 1 } else { 3 })
}

/// Express a Pauli string (coefficient ignored) as a Majorana monomial on `n` sites.
pub fn pauli_to_majorana(n: usize, p: &PauliString) -> Result<MajoranaMonomial> {
    if p.max_site().is_some_and(|m| m >= n) {
        return Err(Error::InvalidArgument(format!("{} outside a {n}-site chain", p.label())));
    }
    let mut target = vec![0u8; n];
    for (&s, &l) in p.sites.iter().zip(&p.letters) {
        target[s] = letter_code(l);
    }
    // Decide, from the right, which a_j / b_j appear: each selected operator at a
    // site to the right contributes a Z here through its string.
    let mut sel_a = vec![false; n];
    let mut sel_b = vec![false; n];
    let mut parity = false;
    for j in (0..n).rev() {
        let x = target[j] == 1 || target[j] == 2;
        let z = target[j] == 2 || target[j] == 3;
        let b = z ^ parity;
        let a = x ^ b;
        sel_a[j] = a;
        sel_b[j] = b;
        parity ^= a ^ b;
    }
    let mut gammas = Vec::new();
    for j in 0..n {
        if sel_a[j] {
            gammas.push((j, 1u8));
        }
        if sel_b[j] {
            gammas.push((j, 2u8));
        }
    }
    let mut letters = vec![0u8; n];
    let mut e = 0u32;
    for &(j, l) in &gammas {
        for item in letters.iter_mut().take(j) {
            let (c, k) = mul_letter(*item, 3);
            *item = c;
            e += k;
        }
        let (c, k) = mul_letter(letters[j], l);
        letters[j] = c;
        e += k;
    }
    debug_assert_eq!(letters, target);
    let indices = gammas.iter().map(|&(j, l)| if l == 1 { j } else { j + n }).collect();
    Ok(MajoranaMonomial { indices, phase: i_pow(4 - e % 4) })
}

/// Quadratic Majorana Hamiltonian `H = Σ_pq h_pq w_p w_q + constant_shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaQuadratic {
    pub n_modes: usize,
    pub h: CMat,
    pub constant_shift: f64,
}

/// Positive single-particle energies `λ_k` (ascending) and eigenvectors `u_k` of `h`.
#[derive(Clone, Debug)]
pub struct QuasiParticles {
    pub lambdas: Array1<f64>,
    /// `2N × N`; column `k` is the eigenvector of `h` for `+λ_k`.
    pub modes: CMat,
}

impl MajoranaQuadratic {
    pub fn zeros(n_modes: usize) -> Self {
        MajoranaQuadratic { n_modes, h: CMat::zeros((2 * n_modes, 2 * n_modes)), constant_shift: 0.0 }
    }

    /// Checks `h† = h` and `hᵀ = −h`.
    pub fn validate(&self) -> Result<()> {
        let d = 2 * self.n_modes;
        if self.h.dim() != (d, d) {
            return Err(Error::MalformedHamiltonian(format!(
                "h has shape {:?}, expected ({d}, {d})",
                self.h.dim()
            )));
        }
        let scale = max_abs(&self.h).max(1.0);
        if max_abs(&(&self.h - &dagger(&self.h))) > 1e-12 * scale {
            return Err(Error::MalformedHamiltonian("h is not Hermitian".into()));
        }
        if max_abs(&(&self.h + &self.h.t())) > 1e-12 * scale {
            return Err(Error::MalformedHamiltonian("h is not antisymmetric".into()));
        }
        Ok(())
    }

    /// Add `c · w_p w_q` in antisymmetrized form.
    pub fn add_pair(&mut self, p: usize, q: usize, c: C64) {
        self.h[[p, q]] += c;
        self.h[[q, p]] -= c;
    }

    /// The real antisymmetric matrix `−2ih` (coherent drift of the covariance matrix).
    pub fn coherent_drift(&self) -> ndarray::Array2<f64> {
        self.h.mapv(|z| 2.0 * z.im)
    }

    pub fn quasiparticles(&self) -> Result<QuasiParticles> {
        self.validate()?;
        let n = self.n_modes;
        let (vals, vecs) = eigh(&self.h)?;
        Ok(QuasiParticles {
            lambdas: vals.slice(s![n..]).to_owned(),
            modes: vecs.slice(s![.., n..]).to_owned(),
        })
    }

    /// `shift − Σ λ_k`, the energy of the quasiparticle vacuum.
    pub fn ground_energy(&self) -> Result<f64> {
        Ok(self.constant_shift - self.quasiparticles()?.lambdas.sum())
    }

    /// All many-body levels `shift − Σλ + Σ 2λ_k n_k`, ascending (`N ≤ 16`).
    pub fn many_body_levels(&self) -> Result<Vec<f64>> {
        let n = self.n_modes;
        if n > 16 {
            return Err(Error::InvalidSize(format!("{n} modes is too many to enumerate")));
        }
        let lam = self.quasiparticles()?.lambdas;
        let base = self.constant_shift - lam.sum();
        let mut out: Vec<f64> = (0..1usize << n)
            .map(|occ| base + (0..n).filter(|k| occ >> k & 1 == 1).map(|k| 2.0 * lam[k]).sum::<f64>())
            .collect();
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

/// Jordan–Wigner transform of a spin Hamiltonian that is quadratic in Majoranas.
pub fn jordan_wigner(ham: &SpinHamiltonian) -> Result<MajoranaQuadratic> {
    ham.validate()?;
    let n = ham.n_sites;
    let mut out = MajoranaQuadratic::zeros(n);
    for t in &ham.terms {
        let m = pauli_to_majorana(n, t)?;
        match m.indices.len() {
            0 => out.constant_shift += t.coeff * m.phase.re,
            // c·φ·γ_p γ_q = 2cφ w_p w_q = h_pq w_p w_q + h_qp w_q w_p
            2 => out.add_pair(m.indices[0], m.indices[1], m.phase * t.coeff),
            _ => return Err(Error::NotQuasiFree(t.label())),
        }
    }
    Ok(out)
}

/// Coupling vector `u` with `A = Σ_p u_p w_p` for a Pauli coupling operator.
///
/// Strings that map to a single Majorana give an exact linear operator.  Strings
/// that map to `2N − 1` Majoranas (for example `X` or `Y` on the last site) equal
/// the fermion parity times a single Majorana; on parity-even states such a
/// jump generates the same dissipator as the bare Majorana, which is returned.
pub fn coupling_vector(n: usize, p: &PauliString) -> Result<Array1<C64>> {
    let m = pauli_to_majorana(n, p)?;
    let mut u = Array1::from_elem(2 * n, ZERO);
    let root2 = std::f64::consts::SQRT_2;
    match m.indices.len() {
        1 => u[m.indices[0]] = m.phase * root2,
        k if k == 2 * n - 1 => {
            let missing = (0..2 * n).find(|i| !m.indices.contains(i)).expect("one index is missing");
            u[missing] = m.phase * root2;
        }
        _ => return Err(Error::NotQuasiFree(p.label())),
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::models::{build_cluster, build_heisenberg_field, build_tfim, Boundary};
    use crate::hamiltonians::pauli::pauli_matrix;
    use crate::linalg::{eigvalsh, I};

    /// Dense Majorana `w_p` built directly from its Pauli definition.
    fn dense_w(n: usize, p: usize) -> CMat {
        let (site, letter) = if p < n { (p, Pauli::X) } else { (p - n, Pauli::Y) };
        let mut pairs: Vec<(usize, Pauli)> = (0..site).map(|k| (k, Pauli::Z)).collect();
        pairs.push((site, letter));
        let ps = PauliString::from_pairs(&pairs, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        pauli_matrix(&ps, n).unwrap()
    }

    #[test]
    fn monomials_reproduce_pauli_strings() {
        let n = 4;
        let cases = ["Z1", "X0 X1", "X1 Z2 X3", "Y0 Y1", "X3", "Y2", "X0 Y3", "Z0 Z3", "X0 X3"];
        for label in cases {
            let p = PauliString::parse(label).unwrap();
            let m = pauli_to_majorana(n, &p).unwrap();
            let mut prod = CMat::eye(1 << n).mapv(|z| z * m.phase);
            for &w in &m.indices {
                prod = prod.dot(&dense_w(n, w).mapv(|z| z * std::f64::consts::SQRT_2));
            }
            let target = pauli_matrix(&p, n).unwrap();
            assert!(max_abs(&(&prod - &target)) < 1e-13, "{label}");
        }
    }

    #[test]
    fn tfim_pattern_and_magnitudes() {
        let (n, j, g) = (4, 1.0, 1.5);
        let q = jordan_wigner(&build_tfim(n, j, g, Boundary::Open).unwrap()).unwrap();
        q.validate().unwrap();
        for k in 0..n {
            assert!((q.h[[k, k + n]] - I * g).norm() < 1e-15);
        }
        for k in 0..n - 1 {
            assert!((q.h[[k + n, k + 1]] - I * j).norm() < 1e-15);
        }
        let nnz = q.h.iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nnz, 2 * (n + n - 1));
    }

    #[test]
    fn cluster_next_nearest_pattern() {
        let n = 4;
        let q = jordan_wigner(&build_cluster(n, 1.0, 0.5).unwrap()).unwrap();
        for k in 0..n - 2 {
            assert!((q.h[[k + n, k + 2]] - I).norm() < 1e-15);
        }
        assert!((q.h[[0, n]] - I * 0.5).norm() < 1e-15);
    }

    #[test]
    fn heisenberg_is_not_quasi_free() {
        let err = jordan_wigner(&build_heisenberg_field(3, 1.0, 0.1, 1.5).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotQuasiFree(ref s) if s == "Z0 Z1"));
    }

    #[test]
    fn quadratic_form_matches_dense_matrix() {
        let n = 3;
        let ham = build_cluster(n, 1.0, 0.7).unwrap();
        let q = jordan_wigner(&ham).unwrap();
        let mut dense = CMat::eye(1 << n).mapv(|z| z * q.constant_shift);
        let ws: Vec<CMat> = (0..2 * n).map(|p| dense_w(n, p)).collect();
        for p in 0..2 * n {
            for r in 0..2 * n {
                if q.h[[p, r]].norm() > 0.0 {
                    dense = dense + ws[p].dot(&ws[r]).mapv(|z| z * q.h[[p, r]]);
                }
            }
        }
        assert!(max_abs(&(dense - ham.dense_matrix().unwrap())) < 1e-13);
    }

    #[test]
    fn spectrum_consistency_with_dense() {
        for n in 2..=5 {
            let ham = build_tfim(n, 1.0, 1.5, Boundary::Open).unwrap();
            let levels = jordan_wigner(&ham).unwrap().many_body_levels().unwrap();
            let dense = eigvalsh(&ham.dense_matrix().unwrap()).unwrap();
            assert!(levels.iter().zip(dense.iter()).all(|(a, b)| (a - b).abs() < 1e-8), "n={n}");
        }
    }

    #[test]
    fn tfim_two_site_vacuum_energy() {
        let q = jordan_wigner(&build_tfim(2, 1.0, 1.5, Boundary::Open).unwrap()).unwrap();
        assert!((q.ground_energy().unwrap() + 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn boundary_couplings_are_single_majoranas() {
        let n = 5;
        let r2 = std::f64::consts::SQRT_2;
        let x1 = coupling_vector(n, &PauliString::single(0, Pauli::X)).unwrap();
        assert!((x1[0] - r2).norm() < 1e-15);
        let y1 = coupling_vector(n, &PauliString::single(0, Pauli::Y)).unwrap();
        assert!((y1[n] - r2).norm() < 1e-15);
        let xn = coupling_vector(n, &PauliString::single(n - 1, Pauli::X)).unwrap();
        assert!((xn[2 * n - 1].norm() - r2).abs() < 1e-15);
        let yn = coupling_vector(n, &PauliString::single(n - 1, Pauli::Y)).unwrap();
        assert!((yn[n - 1].norm() - r2).abs() < 1e-15);
        assert!(coupling_vector(n, &PauliString::single(2, Pauli::Z)).is_err());
    }
}
