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

//! Clifford+T to Pauli-based computation, and the layer-and-merge optimizer.
//!
//! A compiled circuit stands for `U = C · A · R_m ⋯ R_1` where `C` is the
//! product of the source Cliffords, `A` the Clifford rotations absorbed by
//! the optimizer (first absorbed leftmost) and `R_1` the earliest rotation.
//! Measurement row `j` is `(CA)† Z_q (CA)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::circuit::{Gate, GateCircuit};
use crate::metrics::WeightStats;
use crate::pauli::{
    apply_cx_sliced, apply_table_sliced, pullback_table, words_for, AngleClass, CliffordGate,
    Direction, Pauli, PauliRotation, PauliString, PhasedPauli,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbcError {
    #[error("op {index} ({gate}) is not Clifford+T; synthesize rotations first")]
    NotCliffordT { index: usize, gate: &'static str },
    #[error("op {index} acts on qubit {qubit} after it was measured")]
    MidCircuitMeasurement { index: usize, qubit: usize },
    #[error("rotation {0} in a merged layer is not a ±π/4 rotation")]
    NonQuarterAngle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRow {
    pub pauli: PauliString,
    pub qubit: usize,
    pub clbit: usize,
}

/// One signed Pauli per measured qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementTableau {
    n: usize,
    rows: Vec<MeasurementRow>,
}

impl MeasurementTableau {
    /// `+Z_q` rows for each `(qubit, clbit)` pair.
    pub fn z_basis(n: usize, targets: &[(usize, usize)]) -> Self {
        let rows = targets
            .iter()
            .map(|&(qubit, clbit)| MeasurementRow {
                pauli: PauliString::single(n, qubit, Pauli::Z).expect("qubit in range"),
                qubit,
                clbit,
            })
            .collect();
        MeasurementTableau { n, rows }
    }

    pub fn from_rows(n: usize, rows: Vec<MeasurementRow>) -> Self {
        MeasurementTableau { n, rows }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[MeasurementRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pairwise_commute(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, a)| {
            self.rows[i + 1..]
                .iter()
                .all(|b| a.pauli.commutes_unchecked(&b.pauli))
        })
    }

    fn map_paulis(&mut self, mut f: impl FnMut(&PauliString) -> PauliString) {
        for r in &mut self.rows {
            r.pauli = f(&r.pauli);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PbcCircuit {
    n: usize,
    rotations: Vec<PauliRotation>,
    measurements: MeasurementTableau,
    clifford_trace: Vec<Gate>,
    absorbed: Vec<PauliRotation>,
}

impl PbcCircuit {
    /// A PBC circuit without verification data, e.g. read back from text.
    pub fn new(n: usize, rotations: Vec<PauliRotation>, measurements: MeasurementTableau) -> Self {
        PbcCircuit {
            n,
            rotations,
            measurements,
            clifford_trace: Vec::new(),
            absorbed: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Execution order, earliest first.
    pub fn rotations(&self) -> &[PauliRotation] {
        &self.rotations
    }

    pub fn measurements(&self) -> &MeasurementTableau {
        &self.measurements
    }

    /// Source Cliffords in circuit order; verification only.
    pub fn clifford_trace(&self) -> &[Gate] {
        &self.clifford_trace
    }

    /// Clifford rotations removed by the optimizer, in absorption order.
    pub fn absorbed(&self) -> &[PauliRotation] {
        &self.absorbed
    }

    /// Replaces rotation `i` with its negated-angle version. Intended for
    /// negative controls in verification.
    pub fn corrupt_rotation(&mut self, i: usize) {
        let (p, a) = self.rotations[i].clone().into_parts();
        self.rotations[i] = PauliRotation::new(p, a.negated());
    }
}

fn clifford_of(g: &Gate) -> Option<CliffordGate> {
    Some(match *g {
        Gate::H(q) => CliffordGate::H(q),
        Gate::S(q) => CliffordGate::S(q),
        Gate::Sdg(q) => CliffordGate::Sdg(q),
        Gate::X(q) => CliffordGate::X(q),
        Gate::Y(q) => CliffordGate::Y(q),
        Gate::Z(q) => CliffordGate::Z(q),
        Gate::Cx(control, target) => CliffordGate::Cx { control, target },
        _ => return None,
    })
}

/// Pauli strings stored column-major: one x and one z bit column per qubit
/// and a sign column, each word-packed over rows.
struct SlicedTableau {
    rows: usize,
    xs: Vec<Vec<u64>>,
    zs: Vec<Vec<u64>>,
    signs: Vec<u64>,
}

fn two_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

impl SlicedTableau {
    fn new(n: usize) -> Self {
        SlicedTableau {
            rows: 0,
            xs: vec![Vec::new(); n],
            zs: vec![Vec::new(); n],
            signs: Vec::new(),
        }
    }

    fn push_z(&mut self, q: usize) {
        let r = self.rows;
        if r % 64 == 0 {
            for c in self.xs.iter_mut().chain(self.zs.iter_mut()) {
                c.push(0);
            }
            self.signs.push(0);
        }
        self.zs[q][r / 64] |= 1 << (r % 64);
        self.rows += 1;
    }

    fn pullback(&mut self, g: CliffordGate) {
        match g {
            CliffordGate::Cx { control, target } => {
                let (xc, xt) = two_mut(&mut self.xs, control, target);
                let (zc, zt) = two_mut(&mut self.zs, control, target);
                apply_cx_sliced(xc, zc, xt, zt, &mut self.signs);
            }
            _ => {
                let q = g.qubits().next().expect("single-qubit gate");
                let table = pullback_table(g).expect("single-qubit gate");
                apply_table_sliced(table, &mut self.xs[q], &mut self.zs[q], &mut self.signs);
            }
        }
    }

    fn row(&self, r: usize) -> PauliString {
        let n = self.xs.len();
        let (w, b) = (r / 64, r % 64);
        let mut x = vec![0u64; words_for(n)];
        let mut z = vec![0u64; words_for(n)];
        for q in 0..n {
            x[q / 64] |= ((self.xs[q][w] >> b) & 1) << (q % 64);
            z[q / 64] |= ((self.zs[q][w] >> b) & 1) << (q % 64);
        }
        PauliString::from_words(n, x, z, (self.signs[w] >> b) & 1 == 1)
    }
}

/// Measured `(qubit, clbit)` pairs; all qubits into matching clbits when the
/// circuit has no measurements.
fn measurement_targets(c: &GateCircuit) -> Result<Vec<(usize, usize)>, PbcError> {
    let mut measured = vec![false; c.num_qubits()];
    let mut targets = Vec::new();
    for (index, g) in c.ops().iter().enumerate() {
        match *g {
            Gate::Barrier(_) => {}
            Gate::Measure { qubit, clbit } => {
                if measured[qubit] {
                    return Err(PbcError::MidCircuitMeasurement { index, qubit });
                }
                measured[qubit] = true;
                targets.push((qubit, clbit));
            }
            _ => {
                if let Some(qubit) = g.qubits().find(|&q| measured[q]) {
                    return Err(PbcError::MidCircuitMeasurement { index, qubit });
                }
            }
        }
    }
    if targets.is_empty() {
        targets = (0..c.num_qubits()).map(|q| (q, q)).collect();
    }
    Ok(targets)
}

/// Reverse pass: each T/T† appends a `Z_q` rotation row, each Clifford pulls
/// every row back by `g† · g`. Rotations come out in source order.
pub fn compile_to_pbc(c: &GateCircuit) -> Result<PbcCircuit, PbcError> {
    let n = c.num_qubits();
    for (index, g) in c.ops().iter().enumerate() {
        let k = g.kind();
        if !(k.is_basic_clifford() || k.is_t_like() || k.is_directive()) {
            return Err(PbcError::NotCliffordT {
                index,
                gate: k.name(),
            });
        }
    }
    let targets = measurement_targets(c)?;
    let mut tab = SlicedTableau::new(n);
    for &(q, _) in &targets {
        tab.push_z(q);
    }
    let mut angles = Vec::new();
    let mut trace = Vec::new();
    for g in c.ops().iter().rev() {
        match *g {
            Gate::T(q) => {
                tab.push_z(q);
                angles.push(AngleClass::PlusQuarter);
            }
            Gate::Tdg(q) => {
                tab.push_z(q);
                angles.push(AngleClass::MinusQuarter);
            }
            Gate::Measure { .. } | Gate::Barrier(_) => {}
            _ => {
                let cg = clifford_of(g).expect("validated gate set");
                tab.pullback(cg);
                trace.push(g.clone());
            }
        }
    }
    trace.reverse();
    let m = targets.len();
    let rows = targets
        .iter()
        .enumerate()
        .map(|(r, &(qubit, clbit))| MeasurementRow {
            pauli: tab.row(r),
            qubit,
            clbit,
        })
        .collect();
    let rotations = (0..angles.len())
        .rev()
        .map(|i| PauliRotation::new(tab.row(m + i), angles[i]))
        .collect();
    Ok(PbcCircuit {
        n,
        rotations,
        measurements: MeasurementTableau { n, rows },
        clifford_trace: trace,
        absorbed: Vec::new(),
    })
}

struct LayerMask {
    members: Vec<usize>,
    x_or: Vec<u64>,
    z_or: Vec<u64>,
}

impl LayerMask {
    fn surely_commutes(&self, p: &PauliString) -> bool {
        p.x_words()
            .iter()
            .zip(&self.z_or)
            .chain(p.z_words().iter().zip(&self.x_or))
            .all(|(a, b)| a & b == 0)
    }
}

/// Earliest-fit layering: each rotation goes one layer above the highest
/// layer holding a rotation it anticommutes with. Returns rotation indices.
pub fn layer_rotations(rots: &[PauliRotation]) -> Vec<Vec<usize>> {
    let mut layers: Vec<LayerMask> = Vec::new();
    for (i, r) in rots.iter().enumerate() {
        let p = r.pauli();
        let mut target = 0;
        for (j, layer) in layers.iter().enumerate().rev() {
            if layer.surely_commutes(p) {
                continue;
            }
            if layer
                .members
                .iter()
                .any(|&k| !rots[k].pauli().commutes_unchecked(p))
            {
                target = j + 1;
                break;
            }
        }
        if target == layers.len() {
            let w = p.x_words().len();
            layers.push(LayerMask {
                members: Vec::new(),
                x_or: vec![0; w],
                z_or: vec![0; w],
            });
        }
        let layer = &mut layers[target];
        layer.members.push(i);
        for (o, a) in layer.x_or.iter_mut().zip(p.x_words()) {
            *o |= a;
        }
        for (o, a) in layer.z_or.iter_mut().zip(p.z_words()) {
            *o |= a;
        }
    }
    layers.into_iter().map(|l| l.members).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MergeOutcome {
    /// Surviving `±π/4` rotations, one per group, in first-occurrence order.
    pub residual: Vec<PauliRotation>,
    /// `±π/2` and `π` rotations to absorb.
    pub clifford_parts: Vec<PauliRotation>,
}

/// Residual quarter angle and Clifford part for a net count of `k` quarter
/// turns, `k` taken mod 8.
pub fn merge_table(k: i64) -> (Option<AngleClass>, Option<AngleClass>) {
    use AngleClass::*;
    match k.rem_euclid(8) {
        0 => (None, None),
        1 => (Some(PlusQuarter), None),
        2 => (None, Some(PlusHalf)),
        3 => (Some(PlusQuarter), Some(PlusHalf)),
        4 => (None, Some(Pi)),
        5 => (Some(MinusQuarter), Some(MinusHalf)),
        6 => (None, Some(MinusHalf)),
        _ => (Some(MinusQuarter), None),
    }
}

/// Merges rotations of a mutually commuting layer that share a Pauli.
pub fn merge_layer(layer: &[PauliRotation]) -> Result<MergeOutcome, PbcError> {
    let mut groups: BTreeMap<&PauliString, usize> = BTreeMap::new();
    let mut order: Vec<(&PauliString, i64)> = Vec::new();
    for (i, r) in layer.iter().enumerate() {
        let k = match r.angle() {
            AngleClass::PlusQuarter => 1,
            AngleClass::MinusQuarter => -1,
            _ => return Err(PbcError::NonQuarterAngle(i)),
        };
        match groups.get(r.pauli()) {
            Some(&g) => order[g].1 += k,
            None => {
                groups.insert(r.pauli(), order.len());
                order.push((r.pauli(), k));
            }
        }
    }
    let mut out = MergeOutcome::default();
    for (p, k) in order {
        let (res, part) = merge_table(k);
        if let Some(a) = res {
            out.residual.push(PauliRotation::new(p.clone(), a));
        }
        if let Some(a) = part {
            out.clifford_parts.push(PauliRotation::new(p.clone(), a));
        }
    }
    Ok(out)
}

/// `K† Q K` for a Clifford rotation `K = R_C(±π/2)` or `R_C(π)`.
pub fn pullback_by_part(q: &PauliString, part: &PauliRotation) -> PauliString {
    let axis = part.pauli();
    match part.angle() {
        AngleClass::PlusHalf => q.conjugate_by_quarter_unchecked(axis, true, Direction::Pullback),
        AngleClass::MinusHalf => q.conjugate_by_quarter_unchecked(axis, false, Direction::Pullback),
        AngleClass::Pi => {
            if q.commutes_unchecked(axis) {
                q.clone()
            } else {
                q.negated()
            }
        }
        AngleClass::PlusQuarter | AngleClass::MinusQuarter => {
            panic!("a quarter rotation is not a Clifford part")
        }
    }
}

/// Moves a Clifford part from layer `origin` to the end of the circuit,
/// conjugating every rotation in strictly later layers and every
/// measurement row.
pub fn absorb_clifford_rotation(
    part: &PauliRotation,
    origin: usize,
    layers: &mut [Vec<PauliRotation>],
    measurements: &mut MeasurementTableau,
) {
    for layer in layers.iter_mut().skip(origin + 1) {
        for r in layer.iter_mut() {
            *r = PauliRotation::new(pullback_by_part(r.pauli(), part), r.angle());
        }
    }
    measurements.map_paulis(|p| pullback_by_part(p, part));
}

/// Accumulated conjugation `Q ↦ F† Q F` stored as the images of every
/// single-qubit `X` and `Z`.
struct Frame {
    identity: bool,
    x_img: Vec<PauliString>,
    z_img: Vec<PauliString>,
}

impl Frame {
    fn new(n: usize) -> Self {
        Frame {
            identity: true,
            x_img: (0..n).map(|q| PauliString::single(n, q, Pauli::X).expect("in range")).collect(),
            z_img: (0..n).map(|q| PauliString::single(n, q, Pauli::Z).expect("in range")).collect(),
        }
    }

    /// `F ← F · K`.
    fn compose(&mut self, part: &PauliRotation) {
        self.identity = false;
        for img in self.x_img.iter_mut().chain(self.z_img.iter_mut()) {
            *img = pullback_by_part(img, part);
        }
    }

    fn map(&self, p: &PauliString) -> PauliString {
        if self.identity {
            return p.clone();
        }
        let mut acc = PhasedPauli {
            pauli: PauliString::identity(p.num_qubits()),
            i_power: if p.is_negative() { 2 } else { 0 },
        };
        let mul = |acc: &mut PhasedPauli, f: &PauliString| {
            let prod = acc.pauli.multiply_unchecked(f);
            acc.i_power = (acc.i_power + prod.i_power) % 4;
            acc.pauli = prod.pauli;
        };
        for q in p.support() {
            match p.get_unchecked(q) {
                Pauli::X => mul(&mut acc, &self.x_img[q]),
                Pauli::Z => mul(&mut acc, &self.z_img[q]),
                Pauli::Y => {
                    // Y = i X Z
                    acc.i_power = (acc.i_power + 1) % 4;
                    mul(&mut acc, &self.x_img[q]);
                    mul(&mut acc, &self.z_img[q]);
                }
                Pauli::I => {}
            }
        }
        acc.to_signed().expect("conjugate of a Hermitian Pauli is Hermitian")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PbcStats {
    pub raw_rotation_count: usize,
    pub optimized_rotation_count: usize,
    pub optimization_passes: usize,
    pub layer_count: usize,
    pub raw_weight: Option<WeightStats>,
    pub optimized_weight: Option<WeightStats>,
}

fn rotation_weights(rots: &[PauliRotation]) -> Option<WeightStats> {
    WeightStats::from_weights(rots.iter().map(|r| r.pauli().weight()))
}

/// One layer-merge-absorb pass. Returns the flattened rotations, the parts
/// absorbed in order, and the layer count.
fn optimize_pass(
    rots: &[PauliRotation],
    measurements: &mut MeasurementTableau,
) -> Result<(Vec<PauliRotation>, Vec<PauliRotation>, usize), PbcError> {
    let n = measurements.num_qubits();
    let layers = layer_rotations(rots);
    let mut frame = Frame::new(n);
    let mut out = Vec::with_capacity(rots.len());
    let mut parts = Vec::new();
    for layer in &layers {
        let mapped: Vec<PauliRotation> = layer
            .iter()
            .map(|&i| PauliRotation::new(frame.map(rots[i].pauli()), rots[i].angle()))
            .collect();
        let merged = merge_layer(&mapped)?;
        out.extend(merged.residual);
        for part in merged.clifford_parts {
            frame.compose(&part);
            parts.push(part);
        }
    }
    if !frame.identity {
        measurements.map_paulis(|p| frame.map(p));
    }
    Ok((out, parts, layers.len()))
}

/// Repeats layer, merge and absorb until a pass removes nothing.
pub fn optimize_pbc(pbc: &PbcCircuit) -> Result<(PbcCircuit, PbcStats), PbcError> {
    let mut cur = pbc.clone();
    let raw_rotation_count = cur.rotations.len();
    let mut passes = 0;
    let mut layer_count;
    loop {
        let mut meas = cur.measurements.clone();
        let (rots, parts, layers) = optimize_pass(&cur.rotations, &mut meas)?;
        passes += 1;
        layer_count = layers;
        if rots.len() == cur.rotations.len() {
            debug_assert!(parts.is_empty());
            break;
        }
        cur.rotations = rots;
        cur.measurements = meas;
        cur.absorbed.extend(parts);
    }
    let stats = PbcStats {
        raw_rotation_count,
        optimized_rotation_count: cur.rotations.len(),
        optimization_passes: passes,
        layer_count,
        raw_weight: rotation_weights(&pbc.rotations),
        optimized_weight: rotation_weights(&cur.rotations),
    };
    Ok((cur, stats))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionStats {
    pub rotation_reduction_pct: f64,
    pub weight_reduction_pct: f64,
}

/// Percent reductions; a zero baseline reports 0%.
pub fn pbc_reduction_stats(
    raw_count: usize,
    optimized_count: usize,
    raw_mean_weight: f64,
    optimized_mean_weight: f64,
) -> ReductionStats {
    let pct = |raw: f64, opt: f64| if raw == 0.0 { 0.0 } else { 100.0 * (raw - opt) / raw };
    ReductionStats {
        rotation_reduction_pct: pct(raw_count as f64, optimized_count as f64),
        weight_reduction_pct: pct(raw_mean_weight, optimized_mean_weight),
    }
}
