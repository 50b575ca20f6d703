// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Square operators stored densely or in compressed-row form.

use ndarray::Array2;

use crate::linalg::{dagger, op_norm, CMat, C64, ZERO};

/// Fraction of nonzeros below which [`Operator::from_dense`] switches to CSR.
pub const SPARSE_DENSITY: f64 = 0.1;

/// Compressed-row square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub data: Vec<C64>,
}

impl SparseMatrix {
    /// Keeps entries with `|a_ij| > drop_tol`.
    pub fn from_dense(a: &CMat, drop_tol: f64) -> Self {
        let dim = a.nrows();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for row in a.rows() {
            for (j, &v) in row.iter().enumerate() {
                if v.norm() > drop_tol {
                    indices.push(j);
                    data.push(v);
                }
            }
            indptr.push(indices.len());
        }
        SparseMatrix { dim, indptr, indices, data }
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros((self.dim, self.dim));
        for i in 0..self.dim {
            for k in self.indptr[i]..self.indptr[i + 1] {
                m[[i, self.indices[k]]] += self.data[k];
            }
        }
        m
    }

    /// `A M`.
    pub fn mul_dense(&self, m: &CMat) -> CMat {
        let mut out = CMat::zeros((self.dim, m.ncols()));
        for i in 0..self.dim {
            let mut orow = out.row_mut(i);
            for k in self.indptr[i]..self.indptr[i + 1] {
                let a = self.data[k];
                let mrow = m.row(self.indices[k]);
                orow.zip_mut_with(&mrow, |o, &x| *o += a * x);
            }
        }
        out
    }

    /// `M A†`, i.e. `(A M†)†`; row `i` of the result is `Σ_k conj(a_jk) M_ik` over column `j`.
    pub fn dense_mul_dagger(&self, m: &CMat) -> CMat {
        let mut out = CMat::zeros((m.nrows(), self.dim));
        for j in 0..self.dim {
            let mut ocol = out.column_mut(j);
            for k in self.indptr[j]..self.indptr[j + 1] {
                let a = self.data[k].conj();
                let mcol = m.column(self.indices[k]);
                ocol.zip_mut_with(&mcol, |o, &x| *o += a * x);
            }
        }
        out
    }

    pub fn dagger(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.dim + 1];
        for &j in &self.indices {
            counts[j + 1] += 1;
        }
        for j in 0..self.dim {
            counts[j + 1] += counts[j];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0; self.nnz()];
        let mut data = vec![ZERO; self.nnz()];
        for i in 0..self.dim {
            for k in self.indptr[i]..self.indptr[i + 1] {
                let j = self.indices[k];
                let slot = next[j];
                indices[slot] = i;
                data[slot] = self.data[k].conj();
                next[j] += 1;
            }
        }
        SparseMatrix { dim: self.dim, indptr, indices, data }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Operator {
    Dense(CMat),
    Sparse(SparseMatrix),
}

impl Operator {
    /// CSR when fewer than [`SPARSE_DENSITY`] of the entries exceed `drop_tol`.
    pub fn from_dense(a: CMat, drop_tol: f64) -> Self {
        let nnz = a.iter().filter(|z| z.norm() > drop_tol).count();
        if (nnz as f64) < SPARSE_DENSITY * a.len() as f64 {
            Operator::Sparse(SparseMatrix::from_dense(&a, drop_tol))
        } else {
            Operator::Dense(a)
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Dense(a) => a.nrows(),
            Operator::Sparse(s) => s.dim,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self, Operator::Sparse(_))
    }

    pub fn to_dense(&self) -> CMat {
        match self {
            Operator::Dense(a) => a.clone(),
            Operator::Sparse(s) => s.to_dense(),
        }
    }

    /// `A M`.
    pub fn mul(&self, m: &CMat) -> CMat {
        match self {
            Operator::Dense(a) => a.dot(m),
            Operator::Sparse(s) => s.mul_dense(m),
        }
    }

    /// `M A†`.
    pub fn mul_dagger_right(&self, m: &CMat) -> CMat {
        match self {
            Operator::Dense(a) => m.dot(&dagger(a)),
            Operator::Sparse(s) => s.dense_mul_dagger(m),
        }
    }

    pub fn dagger(&self) -> Operator {
        match self {
            Operator::Dense(a) => Operator::Dense(dagger(a)),
            Operator::Sparse(s) => Operator::Sparse(s.dagger()),
        }
    }

    pub fn norm(&self) -> crate::Result<f64> {
        op_norm(&self.to_dense())
    }

    /// `A† A` as a dense matrix.
    pub fn gram(&self) -> CMat {
        match self {
            Operator::Dense(a) => dagger(a).dot(a),
            Operator::Sparse(s) => s.dagger().mul_dense(&s.to_dense()),
        }
    }
}

impl From<Array2<C64>> for Operator {
    fn from(a: Array2<C64>) -> Self {
        Operator::Dense(a)
    }
}
