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

//! Circuit and PBC characterization statistics.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{asap_layers, circuit_depth, Gate, GateCircuit, GateKind};
use crate::pauli::PauliString;
use crate::pbc::PbcCircuit;
// Inherent f64 math is std-only; test builds link std and shadow this.
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("op {index} ({gate}) is outside the Clifford+T gate set")]
    NotCliffordT { index: usize, gate: &'static str },
    #[error("graph density needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("edge ({0}, {1}) is a self-loop or out of range")]
    BadEdge(usize, usize),
}

/// Population mean and standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of<I: IntoIterator<Item = f64>>(values: I) -> Option<Self> {
        let v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        Some(MeanStd { mean, std: var.sqrt() })
    }
}

/// Undirected weighted graph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InteractionGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

impl InteractionGraph {
    pub fn new(n: usize) -> Self {
        InteractionGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges keyed by `(i, j)` with `i < j`.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.edges
    }

    pub fn weight(&self, a: usize, b: usize) -> u64 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.get(&key).copied().unwrap_or(0)
    }

    pub fn add_weight(&mut self, a: usize, b: usize, w: u64) -> Result<(), MetricsError> {
        if a == b || a >= self.n || b >= self.n {
            return Err(MetricsError::BadEdge(a, b));
        }
        if w > 0 {
            let key = if a < b { (a, b) } else { (b, a) };
            *self.edges.entry(key).or_insert(0) += w;
        }
        Ok(())
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Sum of incident weights per node.
    pub fn weighted_degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.n];
        for (&(i, j), &w) in &self.edges {
            d[i] += w;
            d[j] += w;
        }
        d
    }

    pub fn unweighted_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in self.edges.keys() {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    fn from_dense(n: usize, dense: &[u64]) -> Self {
        let mut g = InteractionGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                let w = dense[i * n + j];
                if w > 0 {
                    g.edges.insert((i, j), w);
                }
            }
        }
        g
    }
}

/// Gate-count statistics of a Clifford+T circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CtStats {
    pub counts: BTreeMap<&'static str, usize>,
    pub total_gates: usize,
    pub clifford_gates: usize,
    pub t_count: usize,
    pub easy_clifford: usize,
    pub hard_clifford: usize,
    pub measurements: usize,
    pub depth: usize,
    pub per_qubit_t: Vec<usize>,
}

pub(crate) fn check_clifford_t(c: &GateCircuit) -> Result<(), MetricsError> {
    for (index, g) in c.ops().iter().enumerate() {
        let k = g.kind();
        if !(k.is_basic_clifford() || k.is_t_like() || k.is_directive()) {
            return Err(MetricsError::NotCliffordT {
                index,
                gate: k.name(),
            });
        }
    }
    Ok(())
}

/// Counts gates by kind. `H`, `X`, `Y`, `Z` are easy Cliffords; `S`, `Sdg`
/// and `CX` are hard. Measurements and barriers are not gates.
pub fn ct_stats(c: &GateCircuit) -> Result<CtStats, MetricsError> {
    check_clifford_t(c)?;
    let mut s = CtStats {
        per_qubit_t: vec![0; c.num_qubits()],
        depth: circuit_depth(c),
        ..CtStats::default()
    };
    for g in c.ops() {
        let k = g.kind();
        match k {
            GateKind::Measure => s.measurements += 1,
            GateKind::Barrier => {}
            GateKind::T | GateKind::Tdg => {
                s.t_count += 1;
                for q in g.qubits() {
                    s.per_qubit_t[q] += 1;
                }
            }
            GateKind::H | GateKind::X | GateKind::Y | GateKind::Z => s.easy_clifford += 1,
            _ => s.hard_clifford += 1,
        }
        if !k.is_directive() {
            *s.counts.entry(k.name()).or_insert(0) += 1;
        }
    }
    s.clifford_gates = s.easy_clifford + s.hard_clifford;
    s.total_gates = s.clifford_gates + s.t_count;
    Ok(s)
}

/// One unit of weight per CNOT on its qubit pair.
pub fn build_ct_graph(c: &GateCircuit) -> InteractionGraph {
    let mut g = InteractionGraph::new(c.num_qubits());
    for op in c.ops() {
        if let Gate::Cx(a, b) = *op {
            g.add_weight(a, b, 1).expect("validated circuit");
        }
    }
    g
}

/// One unit of weight per operator for every pair of qubits in its support.
pub fn build_pbc_graph(pbc: &PbcCircuit, include_measurements: bool) -> InteractionGraph {
    let n = pbc.num_qubits();
    let mut dense = vec![0u64; n * n];
    let mut support = Vec::with_capacity(n);
    let mut add = |p: &PauliString| {
        support.clear();
        support.extend(p.support());
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                dense[i * n + j] += 1;
            }
        }
    };
    for r in pbc.rotations() {
        add(r.pauli());
    }
    if include_measurements {
        for m in pbc.measurements().rows() {
            add(&m.pauli);
        }
    }
    InteractionGraph::from_dense(n, &dense)
}

/// Total edge weight over the edge count of the complete graph.
pub fn graph_density(g: &InteractionGraph) -> Result<f64, MetricsError> {
    let n = g.num_nodes();
    if n < 2 {
        return Err(MetricsError::TooFewNodes(n));
    }
    Ok(g.total_weight() as f64 / (n * (n - 1) / 2) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub weighted: MeanStd,
    pub unweighted: MeanStd,
    pub per_node_weighted: Vec<u64>,
    pub per_node_unweighted: Vec<usize>,
}

pub fn degree_stats(g: &InteractionGraph) -> DegreeStats {
    let w = g.weighted_degrees();
    let u = g.unweighted_degrees();
    DegreeStats {
        weighted: MeanStd::of(w.iter().map(|&x| x as f64)).unwrap_or_default(),
        unweighted: MeanStd::of(u.iter().map(|&x| x as f64)).unwrap_or_default(),
        per_node_weighted: w,
        per_node_unweighted: u,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunityResult {
    pub assignment: Vec<usize>,
    pub q: f64,
    pub community_count: usize,
}

/// `Q = Σ_c [L_c/m - (k_c/2m)²]` with integer weights summed exactly.
pub fn modularity(g: &InteractionGraph, assignment: &[usize]) -> f64 {
    assert_eq!(assignment.len(), g.num_nodes());
    let m = g.total_weight();
    if m == 0 {
        return 0.0;
    }
    let k = assignment.iter().copied().max().map_or(0, |x| x + 1);
    let mut inside = vec![0u64; k];
    let mut degree = vec![0u64; k];
    for (&(i, j), &w) in g.edges() {
        let (ci, cj) = (assignment[i], assignment[j]);
        degree[ci] += w;
        degree[cj] += w;
        if ci == cj {
            inside[ci] += w;
        }
    }
    let m = m as f64;
    (0..k)
        .map(|c| {
            let frac = degree[c] as f64 / (2.0 * m);
            inside[c] as f64 / m - frac * frac
        })
        .sum()
}

struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl Level {
    fn degree(&self, i: usize) -> f64 {
        self.adj[i].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[i]
    }
}

/// Local-moving phase. Returns the community of each node and whether any
/// node moved.
fn local_moves(level: &Level, m: f64, order: &[usize]) -> (Vec<usize>, bool) {
    let n = level.adj.len();
    let mut comm: Vec<usize> = (0..n).collect();
    let k: Vec<f64> = (0..n).map(|i| level.degree(i)).collect();
    let mut tot = k.clone();
    let mut links = vec![0.0f64; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in order {
            let own = comm[i];
            for &c in &touched {
                links[c] = 0.0;
            }
            touched.clear();
            touched.push(own);
            for &(j, w) in &level.adj[i] {
                let c = comm[j];
                if links[c] == 0.0 && !touched.contains(&c) {
                    touched.push(c);
                }
                links[c] += w;
            }
            tot[own] -= k[i];
            let gain = |c: usize| links[c] - tot[c] * k[i] / (2.0 * m);
            let mut best = own;
            let mut best_gain = gain(own);
            for &c in &touched {
                let g = gain(c);
                if g > best_gain + 1e-12 || (g > best_gain - 1e-12 && c < best && best != own) {
                    best = c;
                    best_gain = g;
                }
            }
            tot[best] += k[i];
            if best != own {
                comm[i] = best;
                moved = true;
                moved_any = true;
            }
        }
        if !moved {
            break;
        }
    }
    (comm, moved_any)
}

fn relabel(comm: &mut [usize]) -> usize {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for c in comm.iter_mut() {
        let next = map.len();
        *c = *map.entry(*c).or_insert(next);
    }
    map.len()
}

/// Two-phase Louvain. Seed 0 visits nodes in index order; any other seed
/// visits them in a ChaCha-shuffled order.
pub fn louvain(g: &InteractionGraph, seed: u64) -> CommunityResult {
    let n = g.num_nodes();
    if g.total_weight() == 0 {
        return CommunityResult {
            assignment: (0..n).collect(),
            q: 0.0,
            community_count: n,
        };
    }
    let m = g.total_weight() as f64;
    let mut level = Level {
        adj: vec![Vec::new(); n],
        self_loops: vec![0.0; n],
    };
    for (&(i, j), &w) in g.edges() {
        level.adj[i].push((j, w as f64));
        level.adj[j].push((i, w as f64));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment: Vec<usize> = (0..n).collect();
    loop {
        let size = level.adj.len();
        let mut order: Vec<usize> = (0..size).collect();
        if seed != 0 {
            order.shuffle(&mut rng);
        }
        let (mut comm, moved) = local_moves(&level, m, &order);
        if !moved {
            break;
        }
        let count = relabel(&mut comm);
        for a in assignment.iter_mut() {
            *a = comm[*a];
        }
        let mut self_loops = vec![0.0; count];
        let mut weights: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for i in 0..size {
            self_loops[comm[i]] += level.self_loops[i];
            for &(j, w) in &level.adj[i] {
                if j < i {
                    continue;
                }
                let (a, b) = (comm[i], comm[j]);
                if a == b {
                    self_loops[a] += w;
                } else {
                    *weights.entry((a.min(b), a.max(b))).or_insert(0.0) += w;
                }
            }
        }
        let mut adj = vec![Vec::new(); count];
        for (&(a, b), &w) in &weights {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        level = Level { adj, self_loops };
    }
    let community_count = relabel(&mut assignment);
    let q = modularity(g, &assignment);
    CommunityResult {
        assignment,
        q,
        community_count,
    }
}

/// Qubit-by-time-bin event counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityGrid {
    rows: usize,
    cols: usize,
    cells: Vec<u64>,
}

impl DensityGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        DensityGrid {
            rows,
            cols,
            cells: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.cells[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    fn bump(&mut self, r: usize, c: usize) {
        self.cells[r * self.cols + c] += 1;
    }
}

fn bin_of(pos: usize, len: usize, bins: usize) -> usize {
    if len == 0 {
        return 0;
    }
    ((pos * bins) / len).min(bins - 1)
}

/// T/T† events binned by ASAP layer.
pub fn t_density(c: &GateCircuit, bins: usize) -> DensityGrid {
    let bins = bins.max(1);
    let (layers, depth) = asap_layers(c);
    let mut grid = DensityGrid::new(c.num_qubits(), bins);
    for (g, layer) in c.ops().iter().zip(&layers) {
        if g.kind().is_t_like() {
            let l = layer.expect("T gates occupy a layer");
            for q in g.qubits() {
                grid.bump(q, bin_of(l, depth, bins));
            }
        }
    }
    grid
}

/// Rotation and measurement supports binned by operator position, with
/// measurements counted in the last bin.
pub fn pbc_density(pbc: &PbcCircuit, bins: usize, include_measurements: bool) -> DensityGrid {
    let bins = bins.max(1);
    let rots = pbc.rotations();
    let mut grid = DensityGrid::new(pbc.num_qubits(), bins);
    for (i, r) in rots.iter().enumerate() {
        for q in r.pauli().support() {
            grid.bump(q, bin_of(i, rots.len(), bins));
        }
    }
    if include_measurements {
        for m in pbc.measurements().rows() {
            for q in m.pauli.support() {
                grid.bump(q, bins - 1);
            }
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq)]
pub struct TTiming {
    pub per_qubit: Vec<usize>,
    pub per_qubit_mean: f64,
    pub per_qubit_var: f64,
    pub per_qubit_max: usize,
    pub inter_t_intervals: Vec<usize>,
    pub peak_concurrency: usize,
}

pub fn t_timing(c: &GateCircuit) -> TTiming {
    let (layers, depth) = asap_layers(c);
    let n = c.num_qubits();
    let mut per_qubit = vec![0usize; n];
    let mut last: Vec<Option<usize>> = vec![None; n];
    let mut intervals = Vec::new();
    let mut per_layer = vec![0usize; depth];
    for (g, layer) in c.ops().iter().zip(&layers) {
        if !g.kind().is_t_like() {
            continue;
        }
        let l = layer.expect("T gates occupy a layer");
        per_layer[l] += 1;
        for q in g.qubits() {
            per_qubit[q] += 1;
            if let Some(prev) = last[q] {
                intervals.push(l - prev);
            }
            last[q] = Some(l);
        }
    }
    let stats = MeanStd::of(per_qubit.iter().map(|&x| x as f64)).unwrap_or_default();
    TTiming {
        per_qubit_max: per_qubit.iter().copied().max().unwrap_or(0),
        per_qubit_mean: stats.mean,
        per_qubit_var: stats.std * stats.std,
        per_qubit,
        inter_t_intervals: intervals,
        peak_concurrency: per_layer.into_iter().max().unwrap_or(0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightScope {
    #[default]
    Rotations,
    Measurements,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightStats {
    pub histogram: BTreeMap<usize, usize>,
    pub mean: f64,
    pub std: f64,
}

impl WeightStats {
    pub fn from_weights<I: IntoIterator<Item = usize>>(weights: I) -> Option<Self> {
        let mut histogram = BTreeMap::new();
        for w in weights {
            *histogram.entry(w).or_insert(0usize) += 1;
        }
        let total: usize = histogram.values().sum();
        if total == 0 {
            return None;
        }
        let t = total as f64;
        let mean = histogram.iter().map(|(&w, &c)| w as f64 * c as f64).sum::<f64>() / t;
        let var = histogram
            .iter()
            .map(|(&w, &c)| c as f64 * (w as f64 - mean) * (w as f64 - mean))
            .sum::<f64>()
            / t;
        Some(WeightStats {
            histogram,
            mean,
            std: var.sqrt(),
        })
    }

    pub fn count(&self) -> usize {
        self.histogram.values().sum()
    }
}

/// `None` when the selected operator set is empty.
pub fn pauli_weight_stats(pbc: &PbcCircuit, scope: WeightScope) -> Option<WeightStats> {
    let rots = pbc.rotations().iter().map(|r| r.pauli().weight());
    let meas = pbc.measurements().rows().iter().map(|m| m.pauli.weight());
    match scope {
        WeightScope::Rotations => WeightStats::from_weights(rots),
        WeightScope::Measurements => WeightStats::from_weights(meas),
        WeightScope::Both => WeightStats::from_weights(rots.chain(meas)),
    }
}

/// Rotations plus measurements touching each qubit.
pub fn pbc_ops_per_qubit(pbc: &PbcCircuit) -> Vec<usize> {
    let mut counts = vec![0; pbc.num_qubits()];
    let ops = pbc
        .rotations()
        .iter()
        .map(|r| r.pauli())
        .chain(pbc.measurements().rows().iter().map(|m| &m.pauli));
    for p in ops {
        for q in p.support() {
            counts[q] += 1;
        }
    }
    counts
}
