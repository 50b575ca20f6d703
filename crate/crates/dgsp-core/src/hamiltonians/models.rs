// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Constructors for the spin chains used throughout the crate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::pauli::{Pauli, SpinHamiltonian};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

fn bonds(n: usize, range: usize, boundary: Boundary) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n.saturating_sub(range)).map(|i| (i, i + range)).collect();
    if boundary == Boundary::Periodic {
        for i in n.saturating_sub(range)..n {
            out.push((i, (i + range) % n));
        }
    }
    out
}

fn require(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidSize(format!("{what} needs at least {min} sites, got {n}")));
    }
    Ok(())
}

/// `−g ΣZ_i − J ΣX_iX_{i+1}`.
pub fn build_tfim(n: usize, j: f64, g: f64, boundary: Boundary) -> Result<SpinHamiltonian> {
    build_tfim_fields(n, j, &vec![g; n], boundary).map(|h| {
        h.with_meta("model", "tfim").with_meta("j", j).with_meta("g", g)
    })
}

fn build_tfim_fields(n: usize, j: f64, g: &[f64], boundary: Boundary) -> Result<SpinHamiltonian> {
    require(n, 2, "TFIM")?;
    let mut h = SpinHamiltonian::new(n);
    for (i, &gi) in g.iter().enumerate() {
        h.add(&[(i, Pauli::Z)], -gi);
    }
    for (a, b) in bonds(n, 1, boundary) {
        h.add(&[(a, Pauli::X), (b, Pauli::X)], -j);
    }
    Ok(h)
}

/// TFIM with fields `g_i ~ N(mean, variance)`.
///
/// Each field comes from its own ChaCha8 stream: the generator is seeded with
/// `seed` and the stream index is the site, so a field depends only on
/// `(seed, site)` and is reproducible across platforms.
pub fn build_random_tfim(n: usize, j: f64, mean: f64, variance: f64, seed: u64) -> Result<SpinHamiltonian> {
    if !(variance >= 0.0) {
        return Err(Error::InvalidArgument(format!("variance must be nonnegative, got {variance}")));
    }
    let g = random_fields(n, mean, variance, seed);
    Ok(build_tfim_fields(n, j, &g, Boundary::Open)?
        .with_meta("model", "random_tfim")
        .with_meta("seed", seed))
}

/// Fields drawn by [`build_random_tfim`].
pub fn random_fields(n: usize, mean: f64, variance: f64, seed: u64) -> Vec<f64> {
    let sd = variance.sqrt();
    (0..n)
        .map(|site| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(site as u64);
            let z: f64 = StandardNormal.sample(&mut rng);
            mean + sd * z
        })
        .collect()
}

/// `−J ΣX_jZ_{j+1}X_{j+2} − h₁ ΣZ_j` with open ends.
pub fn build_cluster(n: usize, j: f64, h1: f64) -> Result<SpinHamiltonian> {
    require(n, 3, "cluster model")?;
    let mut h = SpinHamiltonian::new(n);
    for i in 0..n {
        h.add(&[(i, Pauli::Z)], -h1);
    }
    for i in 0..n - 2 {
        h.add(&[(i, Pauli::X), (i + 1, Pauli::Z), (i + 2, Pauli::X)], -j);
    }
    Ok(h.with_meta("model", "cluster").with_meta("j", j).with_meta("h1", h1))
}

/// `(J₁/4)ΣZ_iZ_{i+1} + (J₂/4)ΣZ_iZ_{i+2} − (Γ/2)ΣX_i`.
pub fn build_annni(l: usize, j1: f64, j2: f64, gamma: f64, boundary: Boundary) -> Result<SpinHamiltonian> {
    require(l, 3, "ANNNI")?;
    let mut h = SpinHamiltonian::new(l);
    for (a, b) in bonds(l, 1, boundary) {
        h.add(&[(a, Pauli::Z), (b, Pauli::Z)], j1 / 4.0);
    }
    for (a, b) in bonds(l, 2, boundary) {
        h.add(&[(a, Pauli::Z), (b, Pauli::Z)], j2 / 4.0);
    }
    for i in 0..l {
        h.add(&[(i, Pauli::X)], -gamma / 2.0);
    }
    Ok(h.with_meta("model", "annni"))
}

/// `−J ΣX_iX_{i+1} − ξ Σ(Y_iY_{i+1} + Z_iZ_{i+1}) − g ΣZ_i` with open ends.
pub fn build_heisenberg_field(n: usize, j: f64, xi: f64, g: f64) -> Result<SpinHamiltonian> {
    require(n, 2, "Heisenberg chain")?;
    let mut h = build_tfim(n, j, g, Boundary::Open)?;
    if xi != 0.0 {
        for i in 0..n - 1 {
            h.add(&[(i, Pauli::Y), (i + 1, Pauli::Y)], -xi);
            h.add(&[(i, Pauli::Z), (i + 1, Pauli::Z)], -xi);
        }
    }
    Ok(h.with_meta("model", "heisenberg_field").with_meta("xi", xi))
}

/// Uniform single-site field `strength · Σ letter_i`, e.g. `H₀ = −ΣZ_i`.
pub fn build_uniform_field(n: usize, letter: Pauli, strength: f64) -> Result<SpinHamiltonian> {
    require(n, 1, "field")?;
    let mut h = SpinHamiltonian::new(n);
    for i in 0..n {
        h.add(&[(i, letter)], strength);
    }
    Ok(h.with_meta("model", "field"))
}
