// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Flat-file outputs: CSV tables, JSON summaries and the provenance record.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

/// Shortest round-trip decimal form, `.` as separator; `nan`/`inf` for non-finite values.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:?}")
    }
}

/// Column-oriented table written as CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
        w.write_record(&self.header).map_err(|e| csv_error(path, e))?;
        for r in &self.rows {
            w.write_record(r.iter().map(|&x| fmt_f64(x))).map_err(|e| csv_error(path, e))?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }

    /// Reads a numeric CSV with a header row; an empty file or table is a schema error.
    pub fn read(path: &Path) -> CliResult<Self> {
        let schema = |msg: String| CliError::Schema { path: path.to_path_buf(), msg };
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let header: Vec<String> = r.headers().map_err(|e| schema(e.to_string()))?.iter().map(str::to_string).collect();
        if header.is_empty() || header.iter().all(|h| h.is_empty()) {
            return Err(schema("file is empty".into()));
        }
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| schema(e.to_string()))?;
            let row = rec
                .iter()
                .map(|s| parse_f64(s).ok_or_else(|| schema(format!("row {}: `{s}` is not a number", i + 1))))
                .collect::<CliResult<Vec<f64>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(schema("no data rows".into()));
        }
        Ok(Table { header, rows })
    }
}

fn parse_f64(s: &str) -> Option<f64> {
    match s.trim() {
        "nan" | "NaN" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        t => t.parse().ok(),
    }
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    CliError::io(path, std::io::Error::other(e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(path, std::io::Error::other(e)))?;
    fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

/// Output directory plus the list of files written into it.
pub struct Outputs {
    pub dir: PathBuf,
    pub files: Vec<String>,
}

impl Outputs {
    pub fn create(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Outputs { dir: dir.to_path_buf(), files: Vec::new() })
    }

    pub fn table(&mut self, name: &str, t: &Table) -> CliResult<()> {
        t.write(&self.dir.join(name))?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> CliResult<()> {
        write_json(&self.dir.join(name), value)?;
        self.files.push(name.to_string());
        Ok(())
    }

    /// Writes `provenance.json` listing every file produced so far.
    pub fn finish(mut self, command: &str, config: &ExperimentConfig, workers: usize) -> CliResult<Vec<String>> {
        let record = Provenance {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config_hash: config.hash(),
            workers,
            outputs: &self.files,
            config,
        };
        write_json(&self.dir.join("provenance.json"), &record)?;
        self.files.push("provenance.json".into());
        Ok(self.files)
    }
}

#[derive(Serialize)]
struct Provenance<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    config_hash: String,
    workers: usize,
    outputs: &'a [String],
    config: &'a ExperimentConfig,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_with_a_dot() {
        for x in [0.1, -3.0e-7, 1.0 / 3.0, 12345.678, 0.0] {
            let s = fmt_f64(x);
            assert!(!s.contains(','));
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let mut t = Table::new(&["t", "value"]);
        t.push(vec![0.0, 1.5]);
        t.push(vec![0.5, f64::NAN]);
        t.write(&p).unwrap();
        let back = Table::read(&p).unwrap();
        assert_eq!(back.header, t.header);
        assert_eq!(back.rows[0], t.rows[0]);
        assert!(back.rows[1][1].is_nan());
    }

    #[test]
    fn empty_csv_is_a_schema_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.csv");
        fs::write(&p, "").unwrap();
        assert!(matches!(Table::read(&p), Err(CliError::Schema { .. })));
        fs::write(&p, "t,value\n").unwrap();
        assert!(matches!(Table::read(&p), Err(CliError::Schema { .. })));
    }
}
