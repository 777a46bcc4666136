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

//! Benchmark families and the standard generated suite.

use std::io;
use std::path::{Path, PathBuf};

use ftcb_core::circuit::GateCircuit;
use ftcb_core::generators::{
    gen_adder, gen_qft, pauli_terms, trotterize, GeneratorError, LatticeSpec, ModelKind,
    ModelParams, TrotterConfig,
};

use crate::output::write_atomic;
use crate::qasm::serialize_qasm;

pub const FAMILIES: [&str; 6] = ["qft", "adder", "ising_1d", "heisenberg_1d", "heisenberg_2d", "fermi_hubbard_1d"];

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateParams {
    pub qubits: Option<usize>,
    pub bits: Option<usize>,
    pub sites: Option<usize>,
    pub lx: Option<usize>,
    pub ly: Option<usize>,
    pub steps: usize,
    pub dt: f64,
    pub periodic: bool,
    pub swaps: bool,
    pub model: ModelParams,
}

impl Default for GenerateParams {
    fn default() -> Self {
        let cfg = TrotterConfig::default();
        GenerateParams {
            qubits: None,
            bits: None,
            sites: None,
            lx: None,
            ly: None,
            steps: cfg.steps,
            dt: cfg.dt,
            periodic: true,
            swaps: true,
            model: ModelParams::default(),
        }
    }
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, String> {
    match v {
        Some(0) => Err(format!("{family}: --{flag} must be positive")),
        Some(x) => Ok(x),
        None => Err(format!("{family}: --{flag} is required")),
    }
}

/// Circuit plus a one-line provenance description.
pub fn generate(family: &str, p: &GenerateParams) -> Result<(GateCircuit, String), String> {
    match family {
        "qft" => {
            let n = need(p.qubits, "qubits", family)?;
            Ok((gen_qft(n, p.swaps), format!("qft qubits={n} swaps={}", p.swaps)))
        }
        "adder" => {
            let bits = need(p.bits, "bits", family)?;
            Ok((gen_adder(bits), format!("adder bits={bits} qubits={}", 2 * bits + 2)))
        }
        _ => {
            let kind: ModelKind = family.parse().map_err(|e: GeneratorError| e.to_string())?;
            if !(p.dt.is_finite() && p.dt > 0.0) {
                return Err(format!("{family}: --dt must be positive"));
            }
            if p.steps == 0 {
                return Err(format!("{family}: --steps must be positive"));
            }
            let lattice = if kind.dimension() == 2 {
                let lx = p.lx.or(p.sites);
                let ly = p.ly.or(p.sites);
                LatticeSpec::grid(need(lx, "lx", family)?, need(ly, "ly", family)?, p.periodic)
            } else {
                LatticeSpec::chain(need(p.sites, "sites", family)?, p.periodic)
            };
            let h = pauli_terms(kind, &lattice, &p.model).map_err(|e| e.to_string())?;
            let m = &p.model;
            let cfg = TrotterConfig { steps: p.steps, dt: p.dt };
            let desc = format!(
                "{family} lattice={:?} periodic={} steps={} dt={} j={} h={} jx={} jy={} jz={} t={} u={}",
                lattice.extents, p.periodic, p.steps, p.dt, m.j, m.h, m.jx, m.jy, m.jz, m.t, m.u
            );
            Ok((trotterize(&h, &cfg), desc))
        }
    }
}

/// QASM text with provenance comments ahead of the header.
pub fn render(c: &GateCircuit, provenance: &str) -> String {
    format!("// generated by ftcb {}\n// {provenance}\n{}", env!("CARGO_PKG_VERSION"), serialize_qasm(c))
}

/// The standard suite: one representative per family at benchmark scale.
pub fn standard_suite() -> Vec<(&'static str, &'static str, GenerateParams)> {
    let d = GenerateParams::default;
    vec![
        ("qft_29q", "qft", GenerateParams { qubits: Some(29), swaps: false, ..d() }),
        ("adder_64q", "adder", GenerateParams { bits: Some(31), ..d() }),
        ("ising_1d_100q", "ising_1d", GenerateParams { sites: Some(100), ..d() }),
        ("heisenberg_1d_100q", "heisenberg_1d", GenerateParams { sites: Some(100), ..d() }),
        ("heisenberg_2d_100q", "heisenberg_2d", GenerateParams { lx: Some(10), ly: Some(10), ..d() }),
        ("fermi_hubbard_1d_100q", "fermi_hubbard_1d", GenerateParams { sites: Some(50), ..d() }),
    ]
}

/// Writes the standard suite as `<dir>/<name>.qasm`.
pub fn write_suite(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for (name, family, params) in standard_suite() {
        let (c, desc) = generate(family, &params).map_err(io::Error::other)?;
        let path = dir.join(format!("{name}.qasm"));
        write_atomic(&path, render(&c, &desc).as_bytes())?;
        out.push(path);
    }
    Ok(out)
}
