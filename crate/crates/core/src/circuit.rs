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

//! Gate-level circuit IR and normalization to the Clifford+Rz gate set.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("op {op}: qubit {qubit} out of range ({n} qubits)")]
    QubitOutOfRange { op: usize, qubit: usize, n: usize },
    #[error("op {op}: classical bit {clbit} out of range ({n} bits)")]
    ClbitOutOfRange { op: usize, clbit: usize, n: usize },
    #[error("op {op}: repeated qubit {qubit}")]
    RepeatedQubit { op: usize, qubit: usize },
}

/// Gate kinds understood by the IR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    T,
    Tdg,
    Cx,
    Cz,
    Swap,
    Ccx,
    Rz,
    Rx,
    Ry,
    U1,
    U2,
    U3,
    CPhase,
    Measure,
    Barrier,
}

impl GateKind {
    pub const ALL: [GateKind; 21] = [
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Ccx,
        GateKind::Rz,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::U1,
        GateKind::U2,
        GateKind::U3,
        GateKind::CPhase,
        GateKind::Measure,
        GateKind::Barrier,
    ];

    /// OpenQASM 2.0 name.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Ccx => "ccx",
            GateKind::Rz => "rz",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::U1 => "u1",
            GateKind::U2 => "u2",
            GateKind::U3 => "u3",
            GateKind::CPhase => "cu1",
            GateKind::Measure => "measure",
            GateKind::Barrier => "barrier",
        }
    }

    pub fn is_t_like(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    /// Member of `{H, S, Sdg, X, Y, Z, CX}`.
    pub fn is_basic_clifford(self) -> bool {
        matches!(
            self,
            GateKind::H
                | GateKind::S
                | GateKind::Sdg
                | GateKind::X
                | GateKind::Y
                | GateKind::Z
                | GateKind::Cx
        )
    }

    pub fn is_directive(self) -> bool {
        matches!(self, GateKind::Measure | GateKind::Barrier)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One circuit operation. Angles are in radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    T(usize),
    Tdg(usize),
    /// `(control, target)`
    Cx(usize, usize),
    Cz(usize, usize),
    Swap(usize, usize),
    /// `(control, control, target)`
    Ccx(usize, usize, usize),
    Rz(usize, f64),
    Rx(usize, f64),
    Ry(usize, f64),
    U1(usize, f64),
    /// `(qubit, φ, λ)`
    U2(usize, f64, f64),
    /// `(qubit, θ, φ, λ)`
    U3(usize, f64, f64, f64),
    /// Controlled phase `diag(1, 1, 1, e^{iλ})`: `(control, target, λ)`.
    CPhase(usize, usize, f64),
    Measure { qubit: usize, clbit: usize },
    Barrier(Vec<usize>),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::Cx(..) => GateKind::Cx,
            Gate::Cz(..) => GateKind::Cz,
            Gate::Swap(..) => GateKind::Swap,
            Gate::Ccx(..) => GateKind::Ccx,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::U1(..) => GateKind::U1,
            Gate::U2(..) => GateKind::U2,
            Gate::U3(..) => GateKind::U3,
            Gate::CPhase(..) => GateKind::CPhase,
            Gate::Measure { .. } => GateKind::Measure,
            Gate::Barrier(_) => GateKind::Barrier,
        }
    }

    pub fn qubits(&self) -> Qubits<'_> {
        let fixed = |qs: [usize; 3], len: usize| Qubits::Fixed { qs, len, pos: 0 };
        match *self {
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::Rz(q, _)
            | Gate::Rx(q, _)
            | Gate::Ry(q, _)
            | Gate::U1(q, _)
            | Gate::U2(q, ..)
            | Gate::U3(q, ..)
            | Gate::Measure { qubit: q, .. } => fixed([q, 0, 0], 1),
            Gate::Cx(a, b) | Gate::Cz(a, b) | Gate::Swap(a, b) | Gate::CPhase(a, b, _) => {
                fixed([a, b, 0], 2)
            }
            Gate::Ccx(a, b, c) => fixed([a, b, c], 3),
            Gate::Barrier(ref qs) => Qubits::Slice(qs.iter()),
        }
    }

    /// Real parameters in declaration order.
    pub fn params(&self) -> Vec<f64> {
        match *self {
            Gate::Rz(_, a) | Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::U1(_, a) => vec![a],
            Gate::CPhase(_, _, a) => vec![a],
            Gate::U2(_, a, b) => vec![a, b],
            Gate::U3(_, a, b, c) => vec![a, b, c],
            _ => Vec::new(),
        }
    }

    pub fn clbit(&self) -> Option<usize> {
        match *self {
            Gate::Measure { clbit, .. } => Some(clbit),
            _ => None,
        }
    }
}

/// Iterator over a gate's qubit operands.
#[derive(Debug, Clone)]
pub enum Qubits<'a> {
    Fixed { qs: [usize; 3], len: usize, pos: usize },
    Slice(core::slice::Iter<'a, usize>),
}

impl Iterator for Qubits<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Qubits::Fixed { qs, len, pos } => {
                if *pos < *len {
                    *pos += 1;
                    Some(qs[*pos - 1])
                } else {
                    None
                }
            }
            Qubits::Slice(it) => it.next().copied(),
        }
    }
}

/// Ordered gate list over `n_qubits` qubits and `n_clbits` classical bits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateCircuit {
    n_qubits: usize,
    n_clbits: usize,
    ops: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(n_qubits: usize, n_clbits: usize) -> Self {
        GateCircuit {
            n_qubits,
            n_clbits,
            ops: Vec::new(),
        }
    }

    pub fn from_ops(n_qubits: usize, n_clbits: usize, ops: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = GateCircuit::new(n_qubits, n_clbits);
        c.ops.reserve(ops.len());
        for g in ops {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.n_clbits
    }

    pub fn ops(&self) -> &[Gate] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<Gate> {
        self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let op = self.ops.len();
        let mut seen = [usize::MAX; 3];
        for (i, q) in gate.qubits().enumerate() {
            if q >= self.n_qubits {
                return Err(CircuitError::QubitOutOfRange {
                    op,
                    qubit: q,
                    n: self.n_qubits,
                });
            }
            if i < 3 {
                if seen[..i].contains(&q) {
                    return Err(CircuitError::RepeatedQubit { op, qubit: q });
                }
                seen[i] = q;
            }
        }
        if let Some(clbit) = gate.clbit() {
            if clbit >= self.n_clbits {
                return Err(CircuitError::ClbitOutOfRange {
                    op,
                    clbit,
                    n: self.n_clbits,
                });
            }
        }
        self.ops.push(gate);
        Ok(())
    }

    /// Appends without index validation; callers guarantee the invariants.
    pub(crate) fn push_unchecked(&mut self, gate: Gate) {
        debug_assert!(gate.qubits().all(|q| q < self.n_qubits));
        self.ops.push(gate);
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.ops.iter().filter(|g| g.kind() == kind).count()
    }

    /// `T` plus `T†` gates.
    pub fn t_count(&self) -> usize {
        self.ops.iter().filter(|g| g.kind().is_t_like()).count()
    }
}

/// ASAP schedule: the 0-based layer of every op (`None` for barriers) and the
/// overall depth.
pub fn asap_layers(c: &GateCircuit) -> (Vec<Option<usize>>, usize) {
    let mut frontier = vec![0usize; c.num_qubits()];
    let mut layers = Vec::with_capacity(c.len());
    let mut depth = 0;
    for g in c.ops() {
        match g {
            Gate::Barrier(qs) => {
                let sync = qs.iter().map(|&q| frontier[q]).max().unwrap_or(0);
                for &q in qs {
                    frontier[q] = sync;
                }
                layers.push(None);
            }
            _ => {
                let start = g.qubits().map(|q| frontier[q]).max().unwrap_or(0);
                for q in g.qubits() {
                    frontier[q] = start + 1;
                }
                depth = depth.max(start + 1);
                layers.push(Some(start));
            }
        }
    }
    (layers, depth)
}

pub fn circuit_depth(c: &GateCircuit) -> usize {
    asap_layers(c).1
}

/// `Ry(θ)` as `Sdg, H, Rz(θ), H, S` in application order.
pub(crate) fn ry_sandwich(q: usize, theta: f64) -> [Gate; 5] {
    [Gate::Sdg(q), Gate::H(q), Gate::Rz(q, theta), Gate::H(q), Gate::S(q)]
}

/// The 7-T, 6-CNOT Toffoli network (controls `a`, `b`, target `c`).
pub(crate) fn ccx_network(a: usize, b: usize, c: usize) -> [Gate; 15] {
    [
        Gate::H(c),
        Gate::Cx(b, c),
        Gate::Tdg(c),
        Gate::Cx(a, c),
        Gate::T(c),
        Gate::Cx(b, c),
        Gate::Tdg(c),
        Gate::Cx(a, c),
        Gate::T(b),
        Gate::T(c),
        Gate::H(c),
        Gate::Cx(a, b),
        Gate::T(a),
        Gate::Tdg(b),
        Gate::Cx(a, b),
    ]
}

fn u3_chain(out: &mut GateCircuit, q: usize, theta: f64, phi: f64, lambda: f64) {
    out.push_unchecked(Gate::Rz(q, lambda));
    for g in ry_sandwich(q, theta) {
        out.push_unchecked(g);
    }
    out.push_unchecked(Gate::Rz(q, phi));
}

/// Rewrites every op into `{H, S, Sdg, X, Y, Z, T, Tdg, CX, Rz, Measure,
/// Barrier}`. Equality holds up to global phase; adjacent `Rz` are kept apart.
pub fn normalize_to_clifford_rz(c: &GateCircuit) -> GateCircuit {
    let mut out = GateCircuit::new(c.num_qubits(), c.num_clbits());
    out.ops.reserve(c.len());
    for g in c.ops() {
        match *g {
            Gate::Rx(q, theta) => {
                out.push_unchecked(Gate::H(q));
                out.push_unchecked(Gate::Rz(q, theta));
                out.push_unchecked(Gate::H(q));
            }
            Gate::Ry(q, theta) => {
                for r in ry_sandwich(q, theta) {
                    out.push_unchecked(r);
                }
            }
            Gate::U1(q, lambda) => out.push_unchecked(Gate::Rz(q, lambda)),
            Gate::U2(q, phi, lambda) => u3_chain(&mut out, q, FRAC_PI_2, phi, lambda),
            Gate::U3(q, theta, phi, lambda) => u3_chain(&mut out, q, theta, phi, lambda),
            Gate::Cz(a, b) => {
                out.push_unchecked(Gate::H(b));
                out.push_unchecked(Gate::Cx(a, b));
                out.push_unchecked(Gate::H(b));
            }
            Gate::Swap(a, b) => {
                out.push_unchecked(Gate::Cx(a, b));
                out.push_unchecked(Gate::Cx(b, a));
                out.push_unchecked(Gate::Cx(a, b));
            }
            Gate::Ccx(a, b, t) => {
                for r in ccx_network(a, b, t) {
                    out.push_unchecked(r);
                }
            }
            Gate::CPhase(a, b, lambda) => {
                out.push_unchecked(Gate::Rz(a, lambda / 2.0));
                out.push_unchecked(Gate::Cx(a, b));
                out.push_unchecked(Gate::Rz(b, -lambda / 2.0));
                out.push_unchecked(Gate::Cx(a, b));
                out.push_unchecked(Gate::Rz(b, lambda / 2.0));
            }
            ref other => out.push_unchecked(other.clone()),
        }
    }
    out
}
