// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Pauli strings and weighted sums of them on a chain of qubits.
//!
//! Basis convention: `Z|0⟩ = +|0⟩` and site 0 is the most significant bit of a
//! computational-basis index, so site 0 is the leftmost tensor factor.

use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64, ZERO};

/// Default cap on the number of qubits for which dense matrices are formed.
pub const DEFAULT_DENSE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// `(x, z)` bits of the symplectic representation.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// A real multiple of a tensor product of single-site Pauli operators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub sites: Vec<usize>,
    pub letters: Vec<Pauli>,
    pub coeff: f64,
}

impl PauliString {
    pub fn new(sites: Vec<usize>, letters: Vec<Pauli>, coeff: f64) -> Result<Self> {
        let p = PauliString { sites, letters, coeff };
        p.validate()?;
        Ok(p)
    }

    /// Build from `(site, letter)` pairs in any order.
    pub fn from_pairs(pairs: &[(usize, Pauli)], coeff: f64) -> Result<Self> {
        let mut v = pairs.to_vec();
        v.sort_by_key(|&(s, _)| s);
        Self::new(v.iter().map(|p| p.0).collect(), v.iter().map(|p| p.1).collect(), coeff)
    }

    pub fn single(site: usize, letter: Pauli) -> Self {
        PauliString { sites: vec![site], letters: vec![letter], coeff: 1.0 }
    }

    /// Parse a label such as `X0`, `Y3` or `X0 Z1 X2`.
    pub fn parse(label: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for tok in label.split_whitespace() {
            let mut chars = tok.chars();
            let letter = chars
                .next()
                .and_then(Pauli::from_char)
                .ok_or_else(|| Error::InvalidArgument(format!("bad Pauli token `{tok}`")))?;
            let site: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad site in `{tok}`")))?;
            pairs.push((site, letter));
        }
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli label".into()));
        }
        Self::from_pairs(&pairs, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites.len() != self.letters.len() {
            return Err(Error::InvalidArgument("sites and letters differ in length".into()));
        }
        if self.sites.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "sites must be strictly increasing: {:?}",
                self.sites
            )));
        }
        if !self.coeff.is_finite() {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(())
    }

    pub fn max_site(&self) -> Option<usize> {
        self.sites.last().copied()
    }

    /// Letter acting on `site`, if any.
    pub fn letter_at(&self, site: usize) -> Option<Pauli> {
        self.sites.binary_search(&site).ok().map(|i| self.letters[i])
    }

    /// Bit masks and `Y` count for an `n`-qubit register.
    pub(crate) fn masks(&self, n: usize) -> (usize, usize, u32) {
        let (mut x, mut z, mut ny) = (0usize, 0usize, 0u32);
        for (&s, &l) in self.sites.iter().zip(&self.letters) {
            let bit = 1usize << (n - 1 - s);
            let (bx, bz) = l.bits();
            if bx {
                x |= bit;
            }
            if bz {
                z |= bit;
            }
            if l == Pauli::Y {
                ny += 1;
            }
        }
        (x, z, ny)
    }

    /// Operator label without the coefficient, e.g. `X0 Z1 X2`.
    pub fn label(&self) -> String {
        if self.sites.is_empty() {
            return "I".into();
        }
        self.sites
            .iter()
            .zip(&self.letters)
            .map(|(s, l)| format!("{l}{s}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.coeff, self.label())
    }
}

/// `i^k` for `k mod 4`.
pub(crate) fn i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// Weighted sum of Pauli strings on `n_sites` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinHamiltonian {
    pub n_sites: usize,
    pub terms: Vec<PauliString>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl SpinHamiltonian {
    pub fn new(n_sites: usize) -> Self {
        SpinHamiltonian { n_sites, terms: Vec::new(), metadata: BTreeMap::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, term: PauliString) -> Result<()> {
        term.validate()?;
        if let Some(m) = term.max_site() {
            if m >= self.n_sites {
                return Err(Error::InvalidArgument(format!(
                    "term {term} acts on site {m} of a {}-site chain",
                    self.n_sites
                )));
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub(crate) fn add(&mut self, pairs: &[(usize, Pauli)], coeff: f64) {
        let t = PauliString::from_pairs(pairs, coeff).expect("builder produced a bad term");
        self.push(t).expect("builder produced an out-of-range term");
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 {
            return Err(Error::InvalidSize("zero sites".into()));
        }
        for t in &self.terms {
            t.validate()?;
            if t.max_site().is_some_and(|m| m >= self.n_sites) {
                return Err(Error::InvalidArgument(format!("term {t} out of range")));
            }
        }
        Ok(())
    }

    /// Cheap upper bound on the operator norm: the sum of absolute coefficients.
    pub fn norm_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// `a·self + b·other` on the same chain.
    pub fn linear_combination(&self, a: f64, other: &SpinHamiltonian, b: f64) -> Result<Self> {
        if self.n_sites != other.n_sites {
            return Err(Error::Shape("Hamiltonians act on different chains".into()));
        }
        let mut out = SpinHamiltonian::new(self.n_sites);
        for t in &self.terms {
            out.terms.push(PauliString { coeff: a * t.coeff, ..t.clone() });
        }
        for t in &other.terms {
            out.terms.push(PauliString { coeff: b * t.coeff, ..t.clone() });
        }
        Ok(out)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.n_sites > cap {
            return Err(Error::InvalidSize(format!(
                "{} qubits exceed the dense cap of {cap}",
                self.n_sites
            )));
        }
        Ok(())
    }

    /// Dense `2^N × 2^N` matrix, assembled column by column from bit masks.
    pub fn dense_matrix(&self) -> Result<CMat> {
        self.dense_matrix_capped(DEFAULT_DENSE_CAP)
    }

    pub fn dense_matrix_capped(&self, cap: usize) -> Result<CMat> {
        self.check_cap(cap)?;
        let n = self.n_sites;
        let dim = 1usize << n;
        let mut m = CMat::zeros((dim, dim));
        for t in &self.terms {
            let (x, z, ny) = t.masks(n);
            let base = i_pow(ny) * t.coeff;
            for b in 0..dim {
                let sign = if (b & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                m[[b ^ x, b]] += base * sign;
            }
        }
        Ok(m)
    }

    /// Matrix-free product `H v`.
    pub fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        let n = self.n_sites;
        let mut out = Array1::from_elem(v.len(), ZERO);
        for t in &self.terms {
            let (x, z, ny) = t.masks(n);
            let base = i_pow(ny) * t.coeff;
            for b in 0..v.len() {
                let sign = if (b & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                out[b ^ x] += base * sign * v[b];
            }
        }
        out
    }
}

/// Dense matrix of a single Pauli string (coefficient included).
pub fn pauli_matrix(p: &PauliString, n: usize) -> Result<CMat> {
    let mut h = SpinHamiltonian::new(n);
    h.push(p.clone())?;
    h.dense_matrix()
}
