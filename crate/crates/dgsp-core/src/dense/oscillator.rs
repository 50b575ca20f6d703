// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Site-resolved oscillator norm and its decay under the adjoint Lindbladian.

use super::evolve::{check_step, rk4_step};
use super::system::DenseLindbladSystem;
use crate::error::{Error, Result};
use crate::fit::{fit_decay_rate, DecayFit};
use crate::linalg::{identity, op_norm, trace, CMat, C64};

fn bit(n: usize, site: usize) -> usize {
    1 << (n - 1 - site)
}

fn check(o: &CMat, n: usize, site: usize) -> Result<()> {
    if o.nrows() != 1 << n || !o.is_square() {
        return Err(Error::Shape(format!("operator is not {0}×{0}", 1usize << n)));
    }
    if site >= n {
        return Err(Error::InvalidArgument(format!("site {site} outside a {n}-qubit register")));
    }
    Ok(())
}

/// `P_i(O)`: the part of `O` diagonal in the computational basis of site `i`.
pub fn site_diagonal(o: &CMat, n: usize, site: usize) -> Result<CMat> {
    check(o, n, site)?;
    let m = bit(n, site);
    Ok(CMat::from_shape_fn(o.raw_dim(), |(r, c)| if (r ^ c) & m == 0 { o[[r, c]] } else { C64::new(0.0, 0.0) }))
}

/// `Q_i(O) = O − P_i(O)`.
pub fn site_offdiagonal(o: &CMat, n: usize, site: usize) -> Result<CMat> {
    check(o, n, site)?;
    let m = bit(n, site);
    Ok(CMat::from_shape_fn(o.raw_dim(), |(r, c)| if (r ^ c) & m != 0 { o[[r, c]] } else { C64::new(0.0, 0.0) }))
}

/// `δ_i(O) = O − (I_i/2) ⊗ Tr_i O`.
pub fn site_delta(o: &CMat, n: usize, site: usize) -> Result<CMat> {
    check(o, n, site)?;
    let m = bit(n, site);
    Ok(CMat::from_shape_fn(o.raw_dim(), |(r, c)| {
        if (r ^ c) & m != 0 {
            o[[r, c]]
        } else {
            o[[r, c]] - 0.5 * (o[[r & !m, c & !m]] + o[[r | m, c | m]])
        }
    }))
}

/// `Σ_i ‖δ_i∘P_i(O)‖ + ‖δ_i∘Q_i(O)‖` in the operator norm.
pub fn oscillator_norm(o: &CMat, n: usize) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..n {
        total += op_norm(&site_delta(&site_diagonal(o, n, i)?, n, i)?)?;
        total += op_norm(&site_delta(&site_offdiagonal(o, n, i)?, n, i)?)?;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct HeisenbergDecay {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    /// `‖O(t) − Tr O(t)/2^N‖`, bounded by the oscillator norm.
    pub centered_norms: Vec<f64>,
    pub fit: DecayFit,
    pub warnings: Vec<String>,
}

/// Evolves `O` under the adjoint Lindbladian and fits the decay of its oscillator norm.
pub fn heisenberg_decay_check(
    system: &DenseLindbladSystem,
    o0: &CMat,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<HeisenbergDecay> {
    if o0.dim() != system.hmat.dim() {
        return Err(Error::Shape("observable does not match the system".into()));
    }
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be nonzero".into()));
    }
    check_step(system, dt)?;
    let n = system.n;
    let d = system.dim() as f64;
    let id = identity(system.dim());
    let steps = (t_end / dt).round() as usize;
    let mut o = o0.clone();
    let mut times = Vec::new();
    let mut norms = Vec::new();
    let mut centered = Vec::new();
    let mut sample = |o: &CMat, t: f64| -> Result<()> {
        times.push(t);
        norms.push(oscillator_norm(o, n)?);
        let tr = trace(o) / d;
        centered.push(op_norm(&(o - &id.mapv(|z| z * tr)))?);
        Ok(())
    };
    sample(&o, 0.0)?;
    for k in 1..=steps {
        o = rk4_step(|x| system.adjoint_rhs(x), &o, dt);
        if k % stride == 0 || k == steps {
            sample(&o, k as f64 * dt)?;
        }
    }
    let mut warnings = Vec::new();
    if norms.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-9)) {
        warnings.push("oscillator norm is not monotone".into());
    }
    let fit = fit_decay_rate(&times, &norms, 0.0)?;
    warnings.extend(fit.warnings.iter().cloned());
    Ok(HeisenbergDecay { times, norms, centered_norms: centered, fit, warnings })
}
