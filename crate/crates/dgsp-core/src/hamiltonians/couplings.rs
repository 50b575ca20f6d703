// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Named sets of coupling operators `A_a` from which jump operators are built.

use serde::{Deserialize, Serialize};

use super::pauli::{Pauli, PauliString};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingPreset {
    /// `{X_1, Y_1, X_N, Y_N}`.
    Boundary,
    /// `{X_1, Y_1}`.
    Left,
    /// `{Y_1, Y_N}`.
    EndsY,
    /// `{X_i, Y_i, Z_i}` on every site.
    Bulk,
    /// `{X_i}` on every site.
    SiteX,
    /// `{X_i, Z_i}` on every site.
    Annni,
}

impl CouplingPreset {
    pub fn operators(self, n: usize) -> Result<Vec<PauliString>> {
        if n == 0 {
            return Err(Error::InvalidSize("coupling presets need at least one site".into()));
        }
        let single = |site, letter| PauliString::single(site, letter);
        let last = n - 1;
        let ops = match self {
            CouplingPreset::Boundary => {
                let mut v = vec![single(0, Pauli::X), single(0, Pauli::Y)];
                if last > 0 {
                    v.push(single(last, Pauli::X));
                    v.push(single(last, Pauli::Y));
                }
                v
            }
            CouplingPreset::Left => vec![single(0, Pauli::X), single(0, Pauli::Y)],
            CouplingPreset::EndsY => {
                let mut v = vec![single(0, Pauli::Y)];
                if last > 0 {
                    v.push(single(last, Pauli::Y));
                }
                v
            }
            CouplingPreset::Bulk => (0..n)
                .flat_map(|i| [single(i, Pauli::X), single(i, Pauli::Y), single(i, Pauli::Z)])
                .collect(),
            CouplingPreset::SiteX => (0..n).map(|i| single(i, Pauli::X)).collect(),
            CouplingPreset::Annni => (0..n).flat_map(|i| [single(i, Pauli::X), single(i, Pauli::Z)]).collect(),
        };
        Ok(ops)
    }

    pub fn name(self) -> &'static str {
        match self {
            CouplingPreset::Boundary => "boundary",
            CouplingPreset::Left => "left",
            CouplingPreset::EndsY => "ends_y",
            CouplingPreset::Bulk => "bulk",
            CouplingPreset::SiteX => "site_x",
            CouplingPreset::Annni => "annni",
        }
    }
}
