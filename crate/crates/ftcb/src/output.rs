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

//! Artifact files. Every write goes to a temporary sibling first and is
//! renamed into place.

use std::fs;
use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use ftcb_core::metrics::DensityGrid;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::pbc_text::write_pbc;
use crate::qasm::{serialize_with_layout, Register};

pub const STATS_FILE: &str = "stats.json";
pub const QASM_FILE: &str = "clifford_t.qasm";
pub const PBC_FILE: &str = "circuit.pbc";
pub const T_DENSITY_FILE: &str = "t_density.csv";
pub const PBC_DENSITY_FILE: &str = "pbc_density.csv";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = dir.join(format!(
        ".{}.{}-{}.tmp",
        name.to_string_lossy(),
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let res = fs::write(&tmp, bytes).and_then(|_| fs::rename(&tmp, path));
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Header row `qubit,0,1,…`, then one row per qubit.
pub fn grid_csv(grid: &DensityGrid) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["qubit".to_string()];
    header.extend((0..grid.cols()).map(|b| b.to_string()));
    w.write_record(&header).expect("in-memory write");
    for r in 0..grid.rows() {
        let mut rec = vec![r.to_string()];
        rec.extend(grid.row(r).iter().map(|v| v.to_string()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub json: bool,
    pub csv: bool,
    pub qasm: bool,
    pub pbc_text: bool,
}

impl Formats {
    pub const ALL: Formats = Formats { json: true, csv: true, qasm: true, pbc_text: true };

    /// Comma-separated subset of `json,csv,qasm,pbc-text`.
    pub fn parse(list: &str) -> Result<Self, String> {
        let mut f = Formats { json: false, csv: false, qasm: false, pbc_text: false };
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "json" => f.json = true,
                "csv" => f.csv = true,
                "qasm" => f.qasm = true,
                "pbc-text" => f.pbc_text = true,
                other => return Err(format!("unknown output format '{other}'")),
            }
        }
        Ok(f)
    }
}

/// Writes the selected artifacts into `dir`.
pub fn write_artifacts(
    dir: &Path,
    a: &Analysis,
    qregs: Option<&[Register]>,
    formats: Formats,
) -> io::Result<()> {
    if formats.json {
        write_atomic(&dir.join(STATS_FILE), to_json(&a.stats).as_bytes())?;
    }
    if formats.csv {
        write_atomic(&dir.join(T_DENSITY_FILE), grid_csv(&a.t_density).as_bytes())?;
        write_atomic(&dir.join(PBC_DENSITY_FILE), grid_csv(&a.pbc_density).as_bytes())?;
    }
    if formats.qasm {
        write_atomic(&dir.join(QASM_FILE), serialize_with_layout(&a.clifford_t, qregs).as_bytes())?;
    }
    if formats.pbc_text {
        write_atomic(&dir.join(PBC_FILE), write_pbc(&a.pbc).as_bytes())?;
    }
    Ok(())
}
