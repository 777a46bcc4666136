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

//! End-to-end analysis of one circuit: normalize, synthesize, Clifford+T
//! statistics, PBC compilation and optimization, PBC statistics.

use std::collections::BTreeMap;

use ftcb_core::circuit::{normalize_to_clifford_rz, Gate, GateCircuit};
use ftcb_core::metrics::{
    build_ct_graph, build_pbc_graph, ct_stats, degree_stats, graph_density, louvain,
    pauli_weight_stats, pbc_density, pbc_ops_per_qubit, t_density, t_timing, DensityGrid,
    InteractionGraph, WeightScope, WeightStats,
};
use ftcb_core::pbc::{compile_to_pbc, optimize_pbc, pbc_reduction_stats, PbcCircuit};
use ftcb_core::synthesis::{ingest_external_ct, SkConfig, Synthesizer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const STATS_FORMAT: &str = "ftcb-stats/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthMode {
    Sk,
    None,
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub synth: SynthMode,
    pub sk_depth: usize,
    pub sk_base_length: usize,
    pub optimize: bool,
    /// Count measurement rows in the PBC density grid and weight statistics.
    pub include_measurements: bool,
    pub weight_scope: Option<WeightScope>,
    pub bins: usize,
    pub seed: u64,
    /// Refuse circuits whose estimated tableau footprint exceeds this.
    pub max_ram_bytes: Option<u64>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            synth: SynthMode::Sk,
            sk_depth: 1,
            sk_base_length: ftcb_core::synthesis::DEFAULT_BASE_LENGTH,
            optimize: true,
            include_measurements: false,
            weight_scope: None,
            bins: 50,
            seed: 0,
            max_ram_bytes: None,
        }
    }
}

impl AnalysisConfig {
    pub fn pipeline_label(&self) -> String {
        match self.synth {
            SynthMode::Sk => format!("sk-{}", self.sk_depth),
            SynthMode::None => "none".into(),
            SynthMode::External => "external".into(),
        }
    }

    pub fn scope(&self) -> WeightScope {
        self.weight_scope.unwrap_or(if self.include_measurements {
            WeightScope::Both
        } else {
            WeightScope::Rotations
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    /// Exit code 2.
    #[error("unsupported gate '{gate}' at op {index}{hint}")]
    UnsupportedGate { gate: String, index: usize, hint: &'static str },
    #[error("{0}")]
    Invalid(String),
    #[error("estimated memory {estimate} bytes exceeds the limit of {limit} bytes")]
    MemoryLimit { estimate: u64, limit: u64 },
}

impl AnalysisError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AnalysisError::UnsupportedGate { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisSection {
    pub mode: String,
    pub depth: Option<usize>,
    pub base_length: Option<usize>,
    pub rz_gates: usize,
    pub fidelity_product: f64,
    pub mean_distance: Option<f64>,
    pub max_distance: Option<f64>,
    pub fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSection {
    pub num_edges: usize,
    pub total_weight: u64,
    pub density: Option<f64>,
    pub degree_mean_unweighted: f64,
    pub degree_std_unweighted: f64,
    pub degree_mean_weighted: f64,
    pub degree_std_weighted: f64,
    pub interaction_degree: Vec<u64>,
    pub modularity: f64,
    pub num_communities: usize,
    pub communities: Vec<usize>,
    /// `[i, j, weight]` with `i < j`, sorted.
    pub edges: Vec<[u64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTimingSection {
    pub per_qubit_mean: f64,
    pub per_qubit_var: f64,
    pub per_qubit_max: usize,
    pub per_qubit: Vec<usize>,
    pub inter_t_interval_mean: Option<f64>,
    pub inter_t_interval_max: Option<usize>,
    pub peak_concurrency: usize,
}

/// Stats JSON document. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub format: String,
    pub circuit: String,
    pub pipeline: String,
    pub num_qubits: usize,
    pub source_ops: usize,
    pub rz_gates: usize,
    pub synthesis: Option<SynthesisSection>,
    pub total_gates: usize,
    pub depth: usize,
    pub clifford_gates: usize,
    pub easy_clifford: usize,
    pub hard_clifford: usize,
    pub t_count: usize,
    pub measurements: usize,
    pub gate_counts: BTreeMap<String, usize>,
    pub graph_density: Option<f64>,
    pub degree_mean_unweighted: f64,
    pub degree_std_unweighted: f64,
    pub degree_mean_weighted: f64,
    pub degree_std_weighted: f64,
    pub qubit_interaction_degree: Vec<u64>,
    pub modularity: f64,
    pub num_communities: usize,
    pub ct_graph: GraphSection,
    pub t_timing: TTimingSection,
    pub pbc_optimized: bool,
    pub pbc_raw_rotations: usize,
    pub pbc_t_operators: usize,
    pub pbc_measurements: usize,
    pub pbc_optimization_passes: usize,
    pub pbc_layer_count: usize,
    pub pbc_weight_scope: String,
    pub pbc_raw_avg_pauli_weight: Option<f64>,
    pub pbc_raw_std_pauli_weight: Option<f64>,
    pub pbc_avg_pauli_weight: Option<f64>,
    pub pbc_std_pauli_weight: Option<f64>,
    pub pbc_raw_weight_histogram: BTreeMap<usize, usize>,
    pub pbc_weight_histogram: BTreeMap<usize, usize>,
    pub rotation_reduction_pct: f64,
    pub weight_reduction_pct: f64,
    pub pbc_ops_per_qubit: Vec<usize>,
    pub pbc_graph: GraphSection,
}

/// Everything one analysis produces.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub stats: StatsDocument,
    pub clifford_t: GateCircuit,
    pub pbc: PbcCircuit,
    pub t_density: DensityGrid,
    pub pbc_density: DensityGrid,
}

fn graph_section(g: &InteractionGraph, seed: u64) -> GraphSection {
    let d = degree_stats(g);
    let c = louvain(g, seed);
    GraphSection {
        num_edges: g.num_edges(),
        total_weight: g.total_weight(),
        density: graph_density(g).ok(),
        degree_mean_unweighted: d.unweighted.mean,
        degree_std_unweighted: d.unweighted.std,
        degree_mean_weighted: d.weighted.mean,
        degree_std_weighted: d.weighted.std,
        interaction_degree: d.per_node_weighted,
        modularity: c.q,
        num_communities: c.community_count,
        communities: c.assignment,
        edges: g.edges().iter().map(|(&(i, j), &w)| [i as u64, j as u64, w]).collect(),
    }
}

fn scope_name(s: WeightScope) -> &'static str {
    match s {
        WeightScope::Rotations => "rotations",
        WeightScope::Measurements => "measurements",
        WeightScope::Both => "both",
    }
}

/// Rough upper bound on the bytes the tableau and rotation lists occupy.
pub fn estimate_pbc_bytes(n: usize, t_count: usize) -> u64 {
    let words = n.div_ceil(64).max(1) as u64;
    // x and z words per row; compile, optimize and output copies.
    (t_count as u64 + n as u64) * words * 16 * 4 + (t_count as u64) * 64
}

pub fn analyze(
    name: &str,
    source: &GateCircuit,
    cfg: &AnalysisConfig,
    external: Option<&GateCircuit>,
) -> Result<Analysis, AnalysisError> {
    if cfg.bins == 0 {
        return Err(AnalysisError::Invalid("bins must be at least 1".into()));
    }
    let normalized = normalize_to_clifford_rz(source);
    let rz_gates = normalized.ops().iter().filter(|g| matches!(g, Gate::Rz(..))).count();
    let (ct, synthesis) = match cfg.synth {
        SynthMode::None => {
            if let Some(index) = normalized.ops().iter().position(|g| matches!(g, Gate::Rz(..))) {
                return Err(AnalysisError::UnsupportedGate {
                    gate: "rz".into(),
                    index,
                    hint: " (arbitrary-angle rotations need --synth sk or --synth external)",
                });
            }
            (normalized, None)
        }
        SynthMode::Sk => {
            let mut s = Synthesizer::new(SkConfig { depth: cfg.sk_depth, base_length: cfg.sk_base_length });
            let (ct, rep) = s
                .synthesize_circuit(&normalized)
                .map_err(|e| AnalysisError::Invalid(e.to_string()))?;
            let n = rep.per_gate_distance.len();
            let sec = SynthesisSection {
                mode: "sk".into(),
                depth: Some(cfg.sk_depth),
                base_length: Some(cfg.sk_base_length),
                rz_gates: n,
                fidelity_product: rep.fidelity_product,
                mean_distance: (n > 0).then(|| rep.per_gate_distance.iter().sum::<f64>() / n as f64),
                max_distance: rep.per_gate_distance.iter().copied().reduce(f64::max),
                fallbacks: rep.fallbacks,
            };
            (ct, Some(sec))
        }
        SynthMode::External => {
            let ext = external.ok_or_else(|| {
                AnalysisError::Invalid("--synth external needs an external Clifford+T file".into())
            })?;
            ingest_external_ct(ext).map_err(|e| match e {
                ftcb_core::synthesis::SynthesisError::NotCliffordT { index, gate } => {
                    AnalysisError::UnsupportedGate { gate: gate.into(), index, hint: " in external file" }
                }
                other => AnalysisError::Invalid(other.to_string()),
            })?;
            if ext.num_qubits() != source.num_qubits() {
                return Err(AnalysisError::Invalid(format!(
                    "external circuit has {} qubits, source has {}",
                    ext.num_qubits(),
                    source.num_qubits()
                )));
            }
            let sec = SynthesisSection {
                mode: "external".into(),
                depth: None,
                base_length: None,
                rz_gates,
                fidelity_product: 1.0,
                mean_distance: None,
                max_distance: None,
                fallbacks: 0,
            };
            (ext.clone(), Some(sec))
        }
    };

    let cts = ct_stats(&ct).map_err(|e| match e {
        ftcb_core::metrics::MetricsError::NotCliffordT { index, gate } => {
            AnalysisError::UnsupportedGate { gate: gate.into(), index, hint: "" }
        }
        other => AnalysisError::Invalid(other.to_string()),
    })?;
    if let Some(limit) = cfg.max_ram_bytes {
        let estimate = estimate_pbc_bytes(ct.num_qubits(), cts.t_count);
        if estimate > limit {
            return Err(AnalysisError::MemoryLimit { estimate, limit });
        }
    }
    let ct_graph = graph_section(&build_ct_graph(&ct), cfg.seed);
    let timing = t_timing(&ct);
    let intervals = &timing.inter_t_intervals;

    let raw = compile_to_pbc(&ct).map_err(|e| AnalysisError::Invalid(e.to_string()))?;
    let (pbc, stats) = if cfg.optimize {
        optimize_pbc(&raw).map_err(|e| AnalysisError::Invalid(e.to_string()))?
    } else {
        let n = raw.rotations().len();
        let s = ftcb_core::pbc::PbcStats {
            raw_rotation_count: n,
            optimized_rotation_count: n,
            optimization_passes: 0,
            layer_count: ftcb_core::pbc::layer_rotations(raw.rotations()).len(),
            raw_weight: None,
            optimized_weight: None,
        };
        (raw.clone(), s)
    };
    let scope = cfg.scope();
    let raw_w = pauli_weight_stats(&raw, scope);
    let opt_w = pauli_weight_stats(&pbc, scope);
    let mean = |w: &Option<WeightStats>| w.as_ref().map(|w| w.mean);
    let std = |w: &Option<WeightStats>| w.as_ref().map(|w| w.std);
    let hist = |w: &Option<WeightStats>| w.as_ref().map(|w| w.histogram.clone()).unwrap_or_default();
    let red = pbc_reduction_stats(
        stats.raw_rotation_count,
        stats.optimized_rotation_count,
        mean(&raw_w).unwrap_or(0.0),
        mean(&opt_w).unwrap_or(0.0),
    );
    let pbc_graph = graph_section(&build_pbc_graph(&pbc, true), cfg.seed);

    let doc = StatsDocument {
        format: STATS_FORMAT.into(),
        circuit: name.into(),
        pipeline: cfg.pipeline_label(),
        num_qubits: ct.num_qubits(),
        source_ops: source.len(),
        rz_gates,
        synthesis,
        total_gates: cts.total_gates,
        depth: cts.depth,
        clifford_gates: cts.clifford_gates,
        easy_clifford: cts.easy_clifford,
        hard_clifford: cts.hard_clifford,
        t_count: cts.t_count,
        measurements: cts.measurements,
        gate_counts: cts.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        graph_density: ct_graph.density,
        degree_mean_unweighted: ct_graph.degree_mean_unweighted,
        degree_std_unweighted: ct_graph.degree_std_unweighted,
        degree_mean_weighted: ct_graph.degree_mean_weighted,
        degree_std_weighted: ct_graph.degree_std_weighted,
        qubit_interaction_degree: ct_graph.interaction_degree.clone(),
        modularity: ct_graph.modularity,
        num_communities: ct_graph.num_communities,
        t_timing: TTimingSection {
            per_qubit_mean: timing.per_qubit_mean,
            per_qubit_var: timing.per_qubit_var,
            per_qubit_max: timing.per_qubit_max,
            inter_t_interval_mean: (!intervals.is_empty())
                .then(|| intervals.iter().sum::<usize>() as f64 / intervals.len() as f64),
            inter_t_interval_max: intervals.iter().copied().max(),
            peak_concurrency: timing.peak_concurrency,
            per_qubit: timing.per_qubit,
        },
        ct_graph,
        pbc_optimized: cfg.optimize,
        pbc_raw_rotations: stats.raw_rotation_count,
        pbc_t_operators: stats.optimized_rotation_count,
        pbc_measurements: pbc.measurements().len(),
        pbc_optimization_passes: stats.optimization_passes,
        pbc_layer_count: stats.layer_count,
        pbc_weight_scope: scope_name(scope).into(),
        pbc_raw_avg_pauli_weight: mean(&raw_w),
        pbc_raw_std_pauli_weight: std(&raw_w),
        pbc_avg_pauli_weight: mean(&opt_w),
        pbc_std_pauli_weight: std(&opt_w),
        pbc_raw_weight_histogram: hist(&raw_w),
        pbc_weight_histogram: hist(&opt_w),
        rotation_reduction_pct: red.rotation_reduction_pct,
        weight_reduction_pct: red.weight_reduction_pct,
        pbc_ops_per_qubit: pbc_ops_per_qubit(&pbc),
        pbc_graph,
    };
    Ok(Analysis {
        t_density: t_density(&ct, cfg.bins),
        pbc_density: pbc_density(&pbc, cfg.bins, cfg.include_measurements),
        stats: doc,
        clifford_t: ct,
        pbc,
    })
}
