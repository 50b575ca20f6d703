// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `plot`: standalone SVG line plots of the CSV files this tool writes.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use dgsp_core::fit::{fit_scaling, Axes};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Line,
    Loglog,
    Semilogy,
}

/// A recognized CSV layout: its columns, the x column and the default y columns.
pub struct Schema {
    pub name: &'static str,
    pub columns: &'static [&'static str],
    pub x: &'static str,
    pub y: &'static [&'static str],
}

pub const SCHEMAS: &[Schema] = &[
    Schema { name: "energy", columns: &["t", "energy", "excess_energy"], x: "t", y: &["excess_energy"] },
    Schema {
        name: "quasifree_scan",
        columns: &["n", "rapidity_gap", "fitted_rate", "rate_rel_err", "fit_r2", "ground_energy", "t_end"],
        x: "n",
        y: &["rapidity_gap", "fitted_rate"],
    },
    Schema {
        name: "gap_scan",
        columns: &["n", "rapidity_gap", "effective_gap", "nonhermitian_gap", "kappa", "mixing_bound"],
        x: "n",
        y: &["rapidity_gap", "effective_gap"],
    },
    Schema {
        name: "dense_trajectory",
        columns: &["t", "energy", "excess_energy", "fidelity", "trace_distance", "purity"],
        x: "t",
        y: &["excess_energy", "trace_distance"],
    },
    Schema {
        name: "dense_scan",
        columns: &[
            "n",
            "ground_energy",
            "spectral_gap",
            "manifold_dim",
            "tau_trace",
            "tau_fidelity",
            "tau_energy",
            "fitted_rate",
        ],
        x: "n",
        y: &["tau_trace", "tau_fidelity", "tau_energy"],
    },
    Schema { name: "sop_trajectory", columns: &["t", "sop", "energy"], x: "t", y: &["sop"] },
    Schema { name: "sop_sweep", columns: &["h1_over_j", "sop"], x: "h1_over_j", y: &["sop"] },
    Schema {
        name: "oscillator",
        columns: &["t", "oscillator_norm", "centered_norm"],
        x: "t",
        y: &["oscillator_norm", "centered_norm"],
    },
    Schema { name: "oscillator_rates", columns: &["n", "rate", "r2"], x: "n", y: &["rate"] },
    Schema { name: "gap_path", columns: &["s", "gap", "manifold_dim"], x: "s", y: &["gap"] },
    Schema { name: "asp_trace", columns: &["t", "s", "overlap", "m1", "m2"], x: "t", y: &["overlap", "m1", "m2"] },
    Schema {
        name: "dsp_trace",
        columns: &["t", "overlap", "energy", "m1", "m2"],
        x: "t",
        y: &["overlap", "m1", "m2"],
    },
];

pub fn recognize(header: &[String]) -> Option<&'static Schema> {
    SCHEMAS.iter().find(|s| s.columns.len() == header.len() && s.columns.iter().zip(header).all(|(a, b)| a == b))
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn nice_ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / count as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let start = (lo / step).ceil() as i64;
    let end = (hi / step).floor() as i64;
    (start..=end).map(|k| k as f64 * step).collect()
}

fn fmt_tick(v: f64, log: bool) -> String {
    if log {
        format!("1e{}", v.round() as i64)
    } else if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the selected columns of `table`; `ys` defaults to the schema's choice.
pub fn render(table: &Table, schema: &Schema, kind: PlotKind, ys: &[String], title: &str) -> CliResult<String> {
    let x_col = table.column(schema.x).expect("recognized schema has its x column");
    let log_x = kind == PlotKind::Loglog;
    let log_y = kind != PlotKind::Line;
    let names: Vec<String> =
        if ys.is_empty() { schema.y.iter().map(|s| s.to_string()).collect() } else { ys.to_vec() };
    let mut series = Vec::new();
    for name in &names {
        let col = table
            .column(name)
            .ok_or_else(|| CliError::Config(format!("--y: no column `{name}` in the {} schema", schema.name)))?;
        let points: Vec<(f64, f64)> = x_col
            .iter()
            .zip(&col)
            .filter(|(x, y)| x.is_finite() && y.is_finite() && (!log_x || **x > 0.0) && (!log_y || **y > 0.0))
            .map(|(x, y)| (if log_x { x.log10() } else { *x }, if log_y { y.log10() } else { *y }))
            .collect();
        if !points.is_empty() {
            series.push(Series { label: name.clone(), points });
        }
    }
    if series.is_empty() {
        return Err(CliError::Config("plot: no plottable points for the chosen axes".into()));
    }
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 - x0 < 1e-12 {
        (x0, x1) = (x0 - 0.5, x1 + 0.5);
    }
    if y1 - y0 < 1e-12 {
        (y0, y1) = (y0 - 0.5, y1 + 0.5);
    }
    let pad = 0.04 * (y1 - y0);
    (y0, y1) = (y0 - pad, y1 + pad);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(w, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, LEFT + pw / 2.0, escape(title));
    let _ = writeln!(w, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    let xticks = if log_x { nice_ticks(x0.floor(), x1.ceil(), 6) } else { nice_ticks(x0, x1, 6) };
    for t in xticks.into_iter().filter(|t| *t >= x0 - 1e-12 && *t <= x1 + 1e-12) {
        let x = sx(t);
        let _ = writeln!(w, r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/>"##, TOP + ph);
        let _ = writeln!(w, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 16.0, fmt_tick(t, log_x));
    }
    let yticks = if log_y { nice_ticks(y0.floor(), y1.ceil(), 6) } else { nice_ticks(y0, y1, 6) };
    for t in yticks.into_iter().filter(|t| *t >= y0 - 1e-12 && *t <= y1 + 1e-12) {
        let y = sy(t);
        let _ = writeln!(w, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##, LEFT + pw);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 6.0, y + 4.0, fmt_tick(t, log_y));
    }
    let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, HEIGHT - 12.0, escape(schema.x));
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(w, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        if s.points.len() <= 30 {
            for &(x, y) in &s.points {
                let _ = writeln!(w, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, sx(x), sy(y));
            }
        }
        let mut label = s.label.clone();
        if kind == PlotKind::Loglog && s.points.len() >= 2 {
            let xs: Vec<f64> = s.points.iter().map(|p| 10f64.powf(p.0)).collect();
            let ys: Vec<f64> = s.points.iter().map(|p| 10f64.powf(p.1)).collect();
            if let Ok(f) = fit_scaling(&xs, &ys, Axes::LogLog) {
                label = format!("{label} (slope {:.2})", f.slope);
            }
        }
        let ly = TOP + 14.0 + 18.0 * i as f64;
        let lx = LEFT + pw + 10.0;
        let _ = writeln!(w, r#"<line x1="{lx}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#, ly - 4.0, lx + 16.0, ly - 4.0);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#, lx + 20.0, escape(&label));
    }
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

pub fn plot_file(csv: &Path, kind: PlotKind, ys: &[String], out: &Path, title: Option<&str>) -> CliResult<()> {
    let table = Table::read(csv)?;
    let schema = recognize(&table.header).ok_or_else(|| CliError::Schema {
        path: csv.to_path_buf(),
        msg: format!("unrecognized columns: {}", table.header.join(", ")),
    })?;
    let default_title = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let svg = render(&table, schema, kind, ys, title.unwrap_or(&default_title))?;
    std::fs::write(out, svg).map_err(|e| CliError::io(out, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schemas_are_distinct_and_contain_their_axes() {
        for (i, a) in SCHEMAS.iter().enumerate() {
            assert!(a.columns.contains(&a.x));
            assert!(a.y.iter().all(|y| a.columns.contains(y)));
            for b in &SCHEMAS[i + 1..] {
                assert_ne!(a.columns, b.columns);
            }
        }
    }

    #[test]
    fn ticks_cover_the_range() {
        let t = nice_ticks(0.0, 1.0, 5);
        assert_eq!(t.first(), Some(&0.0));
        assert!((t.last().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loglog_legend_reports_the_slope() {
        let mut t = Table::new(&["n", "rate", "r2"]);
        for n in [10.0, 20.0, 40.0, 80.0] {
            t.push(vec![n, n.powi(-3), 1.0]);
        }
        let schema = recognize(&t.header).unwrap();
        let svg = render(&t, schema, PlotKind::Loglog, &[], "gaps").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("slope -3.00"), "{svg}");
    }

    #[test]
    fn semilogy_drops_nonpositive_points() {
        let mut t = Table::new(&["t", "sop", "energy"]);
        t.push(vec![0.0, 0.0, -1.0]);
        t.push(vec![1.0, 0.5, -1.0]);
        t.push(vec![2.0, 0.9, -1.0]);
        let schema = recognize(&t.header).unwrap();
        let svg = render(&t, schema, PlotKind::Semilogy, &[], "sop").unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(render(&t, schema, PlotKind::Semilogy, &["energy".into()], "e").is_err());
    }
}
