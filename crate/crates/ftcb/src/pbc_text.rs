// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Line-oriented PBC text format.
//!
//! ```text
//! pbc v1
//! n 3
//! rot +ZIX pi/4
//! meas +ZII -> c0
//! ```
//!
//! `#` starts a comment. Rotations precede measurements.

use std::fmt::Write as _;

use ftcb_core::pauli::{AngleClass, PauliRotation, PauliString};
use ftcb_core::pbc::{MeasurementRow, MeasurementTableau, PbcCircuit};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct PbcTextError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> PbcTextError {
    PbcTextError { line, msg: msg.into() }
}

pub fn write_pbc(pbc: &PbcCircuit) -> String {
    let rows = pbc.measurements().rows();
    let mut s = String::with_capacity(16 + (pbc.rotations().len() + rows.len()) * (pbc.num_qubits() + 16));
    let _ = writeln!(s, "pbc v1\nn {}", pbc.num_qubits());
    for r in pbc.rotations() {
        let angle = match r.angle() {
            AngleClass::PlusQuarter => "pi/4",
            AngleClass::MinusQuarter => "-pi/4",
            other => unreachable!("PBC rotation lists hold only ±π/4, found {other:?}"),
        };
        let _ = writeln!(s, "rot {} {angle}", r.pauli());
    }
    for m in rows {
        let _ = writeln!(s, "meas {} -> c{}", m.pauli, m.clbit);
    }
    s
}

/// Strict reader. Measurement rows get `qubit` = their position, since the
/// text form records only the classical target.
pub fn parse_pbc(text: &str) -> Result<PbcCircuit, PbcTextError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (l1, head) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if head != "pbc v1" {
        return Err(err(l1, format!("expected 'pbc v1', found '{head}'")));
    }
    let (l2, nline) = lines.next().ok_or_else(|| err(l1, "missing 'n <qubits>' line"))?;
    let n = match nline.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", v] => v.parse::<usize>().map_err(|_| err(l2, format!("bad qubit count '{v}'")))?,
        _ => return Err(err(l2, format!("expected 'n <qubits>', found '{nline}'"))),
    };
    let pauli = |line: usize, tok: &str| -> Result<PauliString, PbcTextError> {
        if !tok.starts_with(['+', '-']) {
            return Err(err(line, format!("Pauli string '{tok}' needs an explicit sign")));
        }
        let p: PauliString = tok.parse().map_err(|e| err(line, format!("bad Pauli string '{tok}': {e}")))?;
        if p.num_qubits() != n {
            return Err(err(line, format!("Pauli string '{tok}' has {} qubits, expected {n}", p.num_qubits())));
        }
        Ok(p)
    };
    let mut rotations = Vec::new();
    let mut rows: Vec<MeasurementRow> = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[..] {
            ["rot", p, a] => {
                if !rows.is_empty() {
                    return Err(err(line, "rotation after measurements"));
                }
                let angle = match a {
                    "pi/4" => AngleClass::PlusQuarter,
                    "-pi/4" => AngleClass::MinusQuarter,
                    _ => return Err(err(line, format!("unknown angle '{a}'"))),
                };
                rotations.push(PauliRotation::new(pauli(line, p)?, angle));
            }
            ["meas", p, "->", c] => {
                let clbit = c
                    .strip_prefix('c')
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| err(line, format!("bad classical target '{c}'")))?;
                if rows.iter().any(|r| r.clbit == clbit) {
                    return Err(err(line, format!("classical bit c{clbit} written twice")));
                }
                let p = pauli(line, p)?;
                if p.is_identity() {
                    return Err(err(line, "identity measurement"));
                }
                if let Some(bad) = rows.iter().position(|r| !r.pauli.commutes(&p).unwrap_or(false)) {
                    return Err(err(line, format!("measurement anticommutes with measurement {bad}")));
                }
                rows.push(MeasurementRow { pauli: p, qubit: rows.len(), clbit });
            }
            _ => return Err(err(line, format!("unrecognized line '{l}'"))),
        }
    }
    Ok(PbcCircuit::new(n, rotations, MeasurementTableau::from_rows(n, rows)))
}
