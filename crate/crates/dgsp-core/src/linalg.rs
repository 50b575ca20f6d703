// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense linear-algebra helpers on top of `ndarray-linalg`.

use ndarray::{Array1, Array2, ArrayView2, Axis, ShapeBuilder};
use ndarray_linalg::{Eig, Eigh, EigValsh, Inverse, SVD, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = Array2<C64>;
pub type RMat = Array2<f64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|z| z.conj())
}

pub fn to_complex(a: &RMat) -> CMat {
    a.mapv(|x| C64::new(x, 0.0))
}

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn trace(a: &CMat) -> C64 {
    a.diag().sum()
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn max_abs_real(a: &RMat) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn frobenius(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian part `(A + A†)/2`.
pub fn hermitian_part(a: &CMat) -> CMat {
    (a + &dagger(a)).mapv(|z| z * 0.5)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is copied to column-major order first: LAPACK reads a row-major
/// Hermitian matrix as its conjugate, which would conjugate the eigenvectors.
pub fn eigh(a: &CMat) -> Result<(Array1<f64>, CMat)> {
    let mut f = CMat::zeros(a.raw_dim().f());
    f.assign(a);
    Ok(f.eigh(UPLO::Lower)?)
}

pub fn eigvalsh(a: &CMat) -> Result<Array1<f64>> {
    Ok(a.eigvalsh(UPLO::Lower)?)
}

/// Eigen-decomposition of a general complex matrix (right eigenvectors as columns).
pub fn eig(a: &CMat) -> Result<(Array1<C64>, CMat)> {
    Ok(a.eig()?)
}

pub fn eig_real(a: &RMat) -> Result<(Array1<C64>, CMat)> {
    Ok(a.eig()?)
}

pub fn inv(a: &CMat) -> Result<CMat> {
    Ok(a.inv()?)
}

pub fn singular_values(a: &CMat) -> Result<Array1<f64>> {
    let (_, s, _) = a.svd(false, false)?;
    Ok(s)
}

/// Spectral norm (largest singular value).
pub fn op_norm(a: &CMat) -> Result<f64> {
    if a.is_empty() {
        return Ok(0.0);
    }
    Ok(singular_values(a)?.iter().fold(0.0, |m: f64, &s| m.max(s)))
}

/// 2-norm condition number `σ_max / σ_min`.
pub fn condition_number(a: &CMat) -> Result<f64> {
    let s = singular_values(a)?;
    let hi = s.iter().fold(0.0, |m: f64, &x| m.max(x));
    let lo = s.iter().fold(f64::INFINITY, |m: f64, &x| m.min(x));
    Ok(if lo > 0.0 { hi / lo } else { f64::INFINITY })
}

/// Scale every column to unit Euclidean norm.
pub fn normalize_columns(v: &mut CMat) {
    for mut col in v.axis_iter_mut(Axis(1)) {
        let n = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 0.0 {
            col.mapv_inplace(|z| z / n);
        }
    }
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = CMat::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let s = a[[i, j]];
            if s == ZERO {
                continue;
            }
            out.slice_mut(ndarray::s![i * br..(i + 1) * br, j * bc..(j + 1) * bc])
                .assign(&b.mapv(|z| z * s));
        }
    }
    out
}

/// `‖A + Aᵀ‖_max`, the antisymmetry defect of a real matrix.
pub fn antisymmetry_defect(a: ArrayView2<f64>) -> f64 {
    let n = a.nrows();
    let mut m: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            m = m.max((a[[i, j]] + a[[j, i]]).abs());
        }
    }
    m
}

/// Pfaffian of a real antisymmetric matrix by Parlett–Reid elimination with pivoting.
pub fn pfaffian(m: &RMat) -> Result<f64> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Shape("pfaffian needs a square matrix".into()));
    }
    if n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("pfaffian of odd dimension {n}")));
    }
    let scale = max_abs_real(m).max(1.0);
    if antisymmetry_defect(m.view()) > 1e-10 * scale {
        return Err(Error::InvalidArgument("matrix is not antisymmetric".into()));
    }
    let mut a = m.clone();
    let mut pf = 1.0;
    for k in (0..n.saturating_sub(1)).step_by(2) {
        let mut kp = k + 1;
        for i in k + 2..n {
            if a[[i, k]].abs() > a[[kp, k]].abs() {
                kp = i;
            }
        }
        if kp != k + 1 {
            for j in 0..n {
                a.swap([k + 1, j], [kp, j]);
            }
            for i in 0..n {
                a.swap([i, k + 1], [i, kp]);
            }
            pf = -pf;
        }
        if a[[k + 1, k]] == 0.0 {
            return Ok(0.0);
        }
        let pivot = a[[k, k + 1]];
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<f64> = (k + 2..n).map(|i| a[[k, i]] / pivot).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| a[[i, k + 1]]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[[i, j]] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
    }
    Ok(pf)
}

/// Least-squares line through `(x, y)`; returns `(slope, intercept, r2)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    (slope, intercept, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray_linalg::Determinant;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_skew(n: usize, rng: &mut ChaCha8Rng) -> RMat {
        let mut a = RMat::zeros((n, n));
        for i in 0..n {
            for j in i + 1..n {
                let x: f64 = rng.random_range(-1.0..1.0);
                a[[i, j]] = x;
                a[[j, i]] = -x;
            }
        }
        a
    }

    #[test]
    fn eigh_vectors_satisfy_the_eigen_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = CMat::from_shape_fn((6, 6), |_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let h = hermitian_part(&a);
        let (l, v) = eigh(&h).unwrap();
        let lv = &v * &l.mapv(|x| C64::new(x, 0.0));
        assert!(max_abs(&(h.dot(&v) - lv)) < 1e-12);
    }

    #[test]
    fn pfaffian_of_two_by_two_is_the_entry() {
        let a = ndarray::array![[0.0, 2.5], [-2.5, 0.0]];
        assert_eq!(pfaffian(&a).unwrap(), 2.5);
    }

    #[test]
    fn pfaffian_squared_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 4, 6, 8, 10, 12] {
            let a = random_skew(n, &mut rng);
            let pf = pfaffian(&a).unwrap();
            let det = a.det().unwrap();
            assert!((pf * pf - det).abs() <= 1e-8 * det.abs().max(1e-300), "n={n}");
        }
    }

    #[test]
    fn pfaffian_four_by_four_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_skew(4, &mut rng);
        let expect = a[[0, 1]] * a[[2, 3]] - a[[0, 2]] * a[[1, 3]] + a[[0, 3]] * a[[1, 2]];
        assert!((pfaffian(&a).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn pfaffian_rejects_odd_and_asymmetric() {
        assert!(pfaffian(&RMat::zeros((3, 3))).is_err());
        let a = ndarray::array![[0.0, 1.0], [1.0, 0.0]];
        assert!(pfaffian(&a).is_err());
    }

    #[test]
    fn pfaffian_permutation_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_skew(6, &mut rng);
        let perm = [3usize, 0, 5, 1, 4, 2];
        let mut p = RMat::zeros((6, 6));
        for (i, &j) in perm.iter().enumerate() {
            p[[j, i]] = 1.0;
        }
        let b = p.t().dot(&a).dot(&p);
        let lhs = pfaffian(&b).unwrap();
        let rhs = p.det().unwrap() * pfaffian(&a).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn linear_fit_recovers_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 - 3.0 * v).collect();
        let (s, c, r2) = linear_fit(&x, &y);
        assert!((s + 3.0).abs() < 1e-12 && (c - 2.0).abs() < 1e-12 && r2 > 0.999999);
    }

    #[test]
    fn kron_of_paulis() {
        let z = ndarray::array![[ONE, ZERO], [ZERO, -ONE]];
        let k = kron(&z, &z);
        assert_eq!(k[[3, 3]], ONE);
        assert_eq!(k[[1, 1]], -ONE);
    }
}
