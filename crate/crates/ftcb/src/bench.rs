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

//! Batch benchmarking: every `.qasm` file in a directory under every
//! requested pipeline, one job per worker.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{analyze, AnalysisConfig, StatsDocument, SynthMode};
use crate::output::{to_json, write_artifacts, write_atomic, Formats, STATS_FILE};
use crate::qasm::{parse_program, parse_qasm};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const SUMMARY_FILE: &str = "summary.csv";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no .qasm files in {0}")]
    EmptySuite(PathBuf),
    #[error("unknown pipeline '{0}' (expected none, sk-<depth>, gs-1 or gs-2)")]
    UnknownPipeline(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Parsed pipeline label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pipeline {
    None,
    Sk(usize),
    /// Reads `<external_dir>/<circuit>.<label>.qasm`.
    External(String),
}

impl Pipeline {
    pub fn parse(label: &str) -> Result<Self, BenchError> {
        match label {
            "none" => Ok(Pipeline::None),
            "gs-1" | "gs-2" => Ok(Pipeline::External(label.into())),
            _ => label
                .strip_prefix("sk-")
                .and_then(|d| d.parse::<usize>().ok())
                .map(Pipeline::Sk)
                .ok_or_else(|| BenchError::UnknownPipeline(label.into())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Pipeline::None => "none".into(),
            Pipeline::Sk(d) => format!("sk-{d}"),
            Pipeline::External(l) => l.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub pipelines: Vec<Pipeline>,
    pub base: AnalysisConfig,
    pub out: PathBuf,
    pub external_dir: Option<PathBuf>,
    pub threads: usize,
    pub formats: Formats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub input: String,
    pub circuit: String,
    pub pipeline: String,
    /// `ok`, `error` or `skipped`.
    pub status: String,
    pub error: Option<String>,
    pub stats_file: Option<String>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub entries: Vec<ManifestEntry>,
}

/// One row of `summary.csv`.
#[derive(Debug, Serialize)]
struct SummaryRow<'a> {
    circuit: &'a str,
    pipeline: &'a str,
    status: &'a str,
    qubits: Option<usize>,
    total_gates: Option<usize>,
    depth: Option<usize>,
    clifford_gates: Option<usize>,
    t_count: Option<usize>,
    graph_density: Option<f64>,
    degree_mean: Option<f64>,
    degree_std: Option<f64>,
    modularity: Option<f64>,
    num_communities: Option<usize>,
    pbc_raw_rotations: Option<usize>,
    pbc_t_operators: Option<usize>,
    rotation_reduction_pct: Option<f64>,
    pbc_raw_avg_pauli_weight: Option<f64>,
    pbc_avg_pauli_weight: Option<f64>,
    weight_reduction_pct: Option<f64>,
}

/// Default worker count: one less than the logical cores, at least one.
/// `FTCB_THREADS` overrides.
pub fn default_threads() -> usize {
    if let Some(n) = std::env::var("FTCB_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            return n;
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(2).saturating_sub(1).max(1)
}

pub fn suite_files(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "qasm"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(BenchError::EmptySuite(dir.to_path_buf()));
    }
    Ok(files)
}

fn circuit_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

enum JobOutcome {
    Ok(Box<StatsDocument>),
    Skipped(String),
    Error(String),
}

fn run_job(path: &Path, pipeline: &Pipeline, cfg: &BenchConfig) -> JobOutcome {
    let name = circuit_name(path);
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return JobOutcome::Error(format!("read {}: {e}", path.display())),
    };
    let program = match parse_program(&text) {
        Ok(p) => p,
        Err(e) => return JobOutcome::Error(format!("parse: {e}")),
    };
    let mut acfg = cfg.base.clone();
    let mut external = None;
    match pipeline {
        Pipeline::None => acfg.synth = SynthMode::None,
        Pipeline::Sk(d) => {
            acfg.synth = SynthMode::Sk;
            acfg.sk_depth = *d;
        }
        Pipeline::External(label) => {
            let Some(dir) = &cfg.external_dir else {
                return JobOutcome::Skipped("no external directory given".into());
            };
            let ext_path = dir.join(format!("{name}.{label}.qasm"));
            let Ok(ext_text) = fs::read_to_string(&ext_path) else {
                return JobOutcome::Skipped(format!("{} not found", ext_path.display()));
            };
            match parse_qasm(&ext_text) {
                Ok(c) => external = Some(c),
                Err(e) => return JobOutcome::Error(format!("parse {}: {e}", ext_path.display())),
            }
            acfg.synth = SynthMode::External;
        }
    }
    let analysis = match analyze(&name, &program.circuit, &acfg, external.as_ref()) {
        Ok(mut a) => {
            a.stats.pipeline = pipeline.label();
            a
        }
        Err(e) => return JobOutcome::Error(e.to_string()),
    };
    let dir = cfg.out.join(&name).join(pipeline.label());
    if let Err(e) = write_artifacts(&dir, &analysis, Some(&program.qregs), cfg.formats) {
        return JobOutcome::Error(format!("write {}: {e}", dir.display()));
    }
    JobOutcome::Ok(Box::new(analysis.stats))
}

/// Runs the suite. A failing job is recorded in the manifest and never
/// stops the others.
pub fn run_bench(suite_dir: &Path, cfg: &BenchConfig) -> Result<Manifest, BenchError> {
    let files = suite_files(suite_dir)?;
    let jobs: Vec<(&PathBuf, &Pipeline)> =
        files.iter().flat_map(|f| cfg.pipelines.iter().map(move |p| (f, p))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .map_err(std::io::Error::other)?;
    let results: Vec<(ManifestEntry, Option<Box<StatsDocument>>)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(path, pipeline)| {
                let start = Instant::now();
                let outcome = catch_unwind(AssertUnwindSafe(|| run_job(path, pipeline, cfg)))
                    .unwrap_or_else(|_| JobOutcome::Error("internal error (panic)".into()));
                let name = circuit_name(path);
                let label = pipeline.label();
                let mut entry = ManifestEntry {
                    input: path.display().to_string(),
                    circuit: name.clone(),
                    pipeline: label.clone(),
                    status: String::new(),
                    error: None,
                    stats_file: None,
                    wall_time_s: 0.0,
                };
                let stats = match outcome {
                    JobOutcome::Ok(s) => {
                        entry.status = "ok".into();
                        if cfg.formats.json {
                            entry.stats_file = Some(format!("{name}/{label}/{STATS_FILE}"));
                        }
                        Some(s)
                    }
                    JobOutcome::Skipped(why) => {
                        entry.status = "skipped".into();
                        entry.error = Some(why);
                        None
                    }
                    JobOutcome::Error(why) => {
                        entry.status = "error".into();
                        entry.error = Some(why);
                        None
                    }
                };
                entry.wall_time_s = start.elapsed().as_secs_f64();
                (entry, stats)
            })
            .collect()
    });

    let mut w = csv::Writer::from_writer(Vec::new());
    for (e, s) in &results {
        let s = s.as_deref();
        w.serialize(SummaryRow {
            circuit: &e.circuit,
            pipeline: &e.pipeline,
            status: &e.status,
            qubits: s.map(|s| s.num_qubits),
            total_gates: s.map(|s| s.total_gates),
            depth: s.map(|s| s.depth),
            clifford_gates: s.map(|s| s.clifford_gates),
            t_count: s.map(|s| s.t_count),
            graph_density: s.and_then(|s| s.graph_density),
            degree_mean: s.map(|s| s.degree_mean_unweighted),
            degree_std: s.map(|s| s.degree_std_unweighted),
            modularity: s.map(|s| s.modularity),
            num_communities: s.map(|s| s.num_communities),
            pbc_raw_rotations: s.map(|s| s.pbc_raw_rotations),
            pbc_t_operators: s.map(|s| s.pbc_t_operators),
            rotation_reduction_pct: s.map(|s| s.rotation_reduction_pct),
            pbc_raw_avg_pauli_weight: s.and_then(|s| s.pbc_raw_avg_pauli_weight),
            pbc_avg_pauli_weight: s.and_then(|s| s.pbc_avg_pauli_weight),
            weight_reduction_pct: s.map(|s| s.weight_reduction_pct),
        })
        .map_err(std::io::Error::other)?;
    }
    let summary = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    write_atomic(&cfg.out.join(SUMMARY_FILE), &summary)?;

    let manifest = Manifest {
        format: "ftcb-manifest/1".into(),
        entries: results.into_iter().map(|(e, _)| e).collect(),
    };
    write_atomic(&cfg.out.join(MANIFEST_FILE), to_json(&manifest).as_bytes())?;
    Ok(manifest)
}
