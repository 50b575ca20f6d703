// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Exponential-tail and power-law fits.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::linalg::linear_fit;

/// Fewest tail points accepted by [`fit_decay_rate`].
pub const MIN_TAIL_POINTS: usize = 10;
/// Below this R² a fit carries a quality warning.
pub const MIN_R2: f64 = 0.95;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecayFit {
    /// `κ` in `value − floor ≈ A e^{−κt}`.
    pub rate: f64,
    pub amplitude: f64,
    pub window: (f64, f64),
    pub n_points: usize,
    pub r2: f64,
    pub warnings: Vec<String>,
}

/// Relative level under which `value − floor` is treated as numerical noise.
fn noise_level(values: &[f64], floor: f64) -> f64 {
    let scale = values.iter().map(|v| v.abs()).fold(floor.abs(), f64::max);
    1e-8 * scale.max(1e-300)
}

/// Rate of exponential approach to `floor`, fitted on the last decade above noise.
///
/// The window ends at the last sample whose excess over `floor` is above the
/// noise level and reaches back while the excess stays within a factor of ten
/// of that final value.  Short windows are widened to [`MIN_TAIL_POINTS`].
pub fn fit_decay_rate(times: &[f64], values: &[f64], floor: f64) -> Result<DecayFit> {
    if times.len() != values.len() {
        return Err(Error::Shape(format!("{} times but {} values", times.len(), values.len())));
    }
    let noise = noise_level(values, floor);
    let excess: Vec<f64> = values.iter().map(|v| v - floor).collect();
    let end = match excess.iter().rposition(|&e| e > noise) {
        Some(i) => i,
        None => return Err(Error::Fit("no samples above the noise floor".into())),
    };
    let top = 10.0 * excess[end];
    let mut start = end;
    while start > 0 && excess[start - 1] > noise && excess[start - 1] <= top {
        start -= 1;
    }
    let mut warnings = Vec::new();
    if end + 1 - start < MIN_TAIL_POINTS {
        let mut s = start;
        while s > 0 && end + 1 - s < MIN_TAIL_POINTS && excess[s - 1] > noise {
            s -= 1;
        }
        if end + 1 - s < MIN_TAIL_POINTS {
            return Err(Error::Fit(format!(
                "only {} positive tail points; at least {MIN_TAIL_POINTS} are needed",
                end + 1 - s
            )));
        }
        warnings.push(format!("tail window widened beyond one decade to {MIN_TAIL_POINTS} points"));
        start = s;
    }
    fit_window(times, &excess, start, end, warnings)
}

/// Like [`fit_decay_rate`] on a caller-chosen window `t_min ≤ t ≤ t_max`.
pub fn fit_decay_rate_in(times: &[f64], values: &[f64], floor: f64, t_min: f64, t_max: f64) -> Result<DecayFit> {
    if times.len() != values.len() {
        return Err(Error::Shape(format!("{} times but {} values", times.len(), values.len())));
    }
    let idx: Vec<usize> = (0..times.len()).filter(|&i| times[i] >= t_min && times[i] <= t_max).collect();
    let (Some(&start), Some(&end)) = (idx.first(), idx.last()) else {
        return Err(Error::Fit(format!("no samples in [{t_min}, {t_max}]")));
    };
    let excess: Vec<f64> = values.iter().map(|v| v - floor).collect();
    if excess[start..=end].iter().any(|&e| e <= 0.0) {
        return Err(Error::Fit("values must exceed the floor inside the window".into()));
    }
    if end + 1 - start < MIN_TAIL_POINTS {
        return Err(Error::Fit(format!("window holds {} points; at least {MIN_TAIL_POINTS} are needed", end + 1 - start)));
    }
    fit_window(times, &excess, start, end, Vec::new())
}

fn fit_window(times: &[f64], excess: &[f64], start: usize, end: usize, mut warnings: Vec<String>) -> Result<DecayFit> {
    let t = &times[start..=end];
    let ly: Vec<f64> = excess[start..=end].iter().map(|e| e.ln()).collect();
    let (slope, intercept, r2) = linear_fit(t, &ly);
    if !slope.is_finite() {
        return Err(Error::Fit("degenerate time grid".into()));
    }
    if excess[start..=end].windows(2).any(|w| w[1] > w[0]) {
        warnings.push("tail is not monotone".into());
    }
    if r2 < MIN_R2 {
        warnings.push(format!("R² = {r2:.4} below {MIN_R2}"));
    }
    Ok(DecayFit {
        rate: -slope,
        amplitude: intercept.exp(),
        window: (t[0], t[t.len() - 1]),
        n_points: t.len(),
        r2,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axes {
    /// `ln y` against `ln x`.
    LogLog,
    /// `y` against `ln x`.
    SemiLogX,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub n_points: usize,
    /// Half-width of the 95% confidence interval on the slope (`NaN` with two points).
    pub slope_ci95: f64,
}

/// Least-squares line through transformed data; log–log by default.
pub fn fit_scaling(xs: &[f64], ys: &[f64], axes: Axes) -> Result<ScalingFit> {
    if xs.len() != ys.len() {
        return Err(Error::Shape(format!("{} sizes but {} values", xs.len(), ys.len())));
    }
    if xs.len() < 2 {
        return Err(Error::Fit("a scaling fit needs at least two points".into()));
    }
    if xs.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::InvalidArgument("sizes must be positive".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ty: Vec<f64> = match axes {
        Axes::LogLog => {
            if ys.iter().any(|&y| !(y > 0.0)) {
                return Err(Error::InvalidArgument("log–log fit needs positive values".into()));
            }
            ys.iter().map(|y| y.ln()).collect()
        }
        Axes::SemiLogX => ys.to_vec(),
    };
    let (slope, intercept, r2) = linear_fit(&lx, &ty);
    let n = xs.len();
    let slope_ci95 = if n > 2 {
        let mx = lx.iter().sum::<f64>() / n as f64;
        let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
        let ss: f64 = lx.iter().zip(&ty).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        let se = (ss / (n - 2) as f64 / sxx).sqrt();
        let t = StudentsT::new(0.0, 1.0, (n - 2) as f64)
            .map_err(|e| Error::Fit(e.to_string()))?
            .inverse_cdf(0.975);
        t * se
    } else {
        f64::NAN
    };
    Ok(ScalingFit { slope, intercept, r2, n_points: n, slope_ci95 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(t_end: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn exact_exponential_rate() {
        let t = grid(10.0, 201);
        let y: Vec<f64> = t.iter().map(|t| 2.5 * (-3.0 * t).exp() - 1.25).collect();
        let f = fit_decay_rate(&t, &y, -1.25).unwrap();
        assert!((f.rate - 3.0).abs() < 1e-6, "{}", f.rate);
        assert!(f.n_points >= MIN_TAIL_POINTS);
    }

    #[test]
    fn window_picks_the_slow_tail() {
        let t = grid(200.0, 2001);
        let y: Vec<f64> = t.iter().map(|t| (-t).exp() + 1e-6 * (-0.1 * t).exp()).collect();
        let f = fit_decay_rate(&t, &y, 0.0).unwrap();
        assert!((f.rate - 0.1).abs() < 1e-3, "{}", f.rate);
        assert!(f.window.0 > 20.0);
    }

    #[test]
    fn too_few_points_is_an_error() {
        let t = grid(1.0, 5);
        let y: Vec<f64> = t.iter().map(|t| (-t).exp()).collect();
        assert!(matches!(fit_decay_rate(&t, &y, 0.0), Err(Error::Fit(_))));
    }

    #[test]
    fn noisy_tail_is_flagged() {
        let t = grid(10.0, 50);
        let y: Vec<f64> = t.iter().enumerate().map(|(i, t)| (-t).exp() * if i % 2 == 0 { 1.0 } else { 3.0 }).collect();
        let f = fit_decay_rate_in(&t, &y, 0.0, 5.0, 10.0).unwrap();
        assert!(f.warnings.iter().any(|w| w.contains("monotone")));
    }

    #[test]
    fn power_law_slope() {
        let xs = [20.0, 40.0, 60.0, 80.0, 100.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| x.powi(-3)).collect();
        let f = fit_scaling(&xs, &ys, Axes::LogLog).unwrap();
        assert!((f.slope + 3.0).abs() < 1e-12);
        assert!(f.slope_ci95 < 1e-9);
    }

    #[test]
    fn semilog_variant_is_linear() {
        let xs: Vec<f64> = (2..=8).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.7 * x.ln()).collect();
        let f = fit_scaling(&xs, &ys, Axes::SemiLogX).unwrap();
        assert!(f.r2 > 0.99);
        assert!((f.slope - 0.7).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_data_is_rejected() {
        assert!(fit_scaling(&[1.0, 2.0, 3.0], &[1.0, 0.0, 2.0], Axes::LogLog).is_err());
        assert!(fit_scaling(&[0.0, 2.0, 3.0], &[1.0, 1.0, 2.0], Axes::SemiLogX).is_err());
    }

    #[test]
    fn confidence_interval_matches_t_quantile() {
        // Residuals ±e alternate; slope error follows from the textbook formula.
        let xs = [1.0f64, 2.0, 3.0, 4.0, 5.0].map(f64::exp);
        let ys = [1.0f64, 2.1, 2.9, 4.1, 4.9].map(f64::exp);
        let f = fit_scaling(&xs, &ys, Axes::LogLog).unwrap();
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [1.0, 2.1, 2.9, 4.1, 4.9];
        let (s, b, _) = linear_fit(&x, &y);
        let ss: f64 = x.iter().zip(&y).map(|(x, y)| (y - b - s * x).powi(2)).sum();
        let se = (ss / 3.0 / 10.0f64).sqrt();
        assert!((f.slope_ci95 - 3.182446305284263 * se).abs() < 1e-9);
    }
}
