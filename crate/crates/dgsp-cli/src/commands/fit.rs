// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! `fit`: scaling fit of two columns of a CSV file.

use std::path::Path;

use dgsp_core::fit::{fit_scaling, Axes};

use super::FitRecord;
use crate::error::{CliError, CliResult, Context};
use crate::io::Table;

pub fn fit_columns(csv: &Path, x: &str, y: &str, axes: Axes) -> CliResult<FitRecord> {
    let table = Table::read(csv)?;
    let col = |name: &str| {
        table.column(name).ok_or_else(|| CliError::Schema {
            path: csv.to_path_buf(),
            msg: format!("no column `{name}`; columns are {}", table.header.join(", ")),
        })
    };
    let (xs, ys) = (col(x)?, col(y)?);
    let (px, py): (Vec<f64>, Vec<f64>) =
        xs.iter().zip(&ys).filter(|(a, b)| a.is_finite() && b.is_finite()).map(|(a, b)| (*a, *b)).unzip();
    let fit = fit_scaling(&px, &py, axes).context(|| format!("fit of {y} against {x}"))?;
    Ok(FitRecord { x: x.into(), y: y.into(), axes, fit })
}
