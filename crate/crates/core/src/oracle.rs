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

//! Dense-matrix brute-force oracle.
//!
//! Qubit 0 is the most significant bit of a basis-state index. Everything
//! here is deliberately naive: it exists to check the fast paths.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::circuit::{Gate, GateCircuit};
use crate::metrics::InteractionGraph;
use crate::pauli::{Pauli, PauliRotation, PauliString};
use crate::pbc::PbcCircuit;
// Inherent f64 math is std-only; test builds link std and shadow this.
#[allow(unused_imports)]
use num_traits::Float;

pub const MAX_UNITARY_QUBITS: usize = 10;
pub const MAX_PBC_QUBITS: usize = 6;
pub const MAX_MODULARITY_NODES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceeds the oracle limit of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("measurement at op {0} has no unitary")]
    Measurement(usize),
    #[error("{n} nodes exceeds the exhaustive limit of {max}")]
    TooManyNodes { n: usize, max: usize },
}

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        DenseMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut out = Self::zeros(d);
        for r1 in 0..a {
            for c1 in 0..a {
                let v = self.data[r1 * a + c1];
                for r2 in 0..b {
                    for c2 in 0..b {
                        out.data[(r1 * b + r2) * d + c1 * b + c2] = v * other.data[r2 * b + c2];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .mul(self)
            .frobenius_distance(&Self::identity(self.dim))
            < tol
    }

    /// Left-multiplies by `gate` acting on `qubits` of an `n`-qubit register.
    /// `gate` is a `2^k × 2^k` row-major matrix, first listed qubit most
    /// significant.
    pub fn apply_left(&mut self, n: usize, qubits: &[usize], gate: &[C64]) {
        let k = qubits.len();
        let sub = 1usize << k;
        debug_assert_eq!(gate.len(), sub * sub);
        let d = self.dim;
        let shifts: Vec<usize> = qubits.iter().map(|&q| n - 1 - q).collect();
        let mask: usize = shifts.iter().map(|s| 1usize << s).sum();
        let mut idx = vec![0usize; sub];
        let mut buf = vec![ZERO; sub];
        for base in 0..d {
            if base & mask != 0 {
                continue;
            }
            for (j, slot) in idx.iter_mut().enumerate() {
                let mut r = base;
                for (b, s) in shifts.iter().enumerate() {
                    if (j >> (k - 1 - b)) & 1 == 1 {
                        r |= 1 << s;
                    }
                }
                *slot = r;
            }
            for c in 0..d {
                for (j, v) in buf.iter_mut().enumerate() {
                    *v = (0..sub).map(|l| gate[j * sub + l] * self.data[idx[l] * d + c]).sum();
                }
                for (j, &v) in buf.iter().enumerate() {
                    self.data[idx[j] * d + c] = v;
                }
            }
        }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn expi(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Row-major matrix of a gate, qubits in operand order.
pub fn gate_matrix(g: &Gate) -> Option<Vec<C64>> {
    let h = FRAC_1_SQRT_2;
    let m = match *g {
        Gate::H(_) => vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)],
        Gate::S(_) => vec![ONE, ZERO, ZERO, I],
        Gate::Sdg(_) => vec![ONE, ZERO, ZERO, -I],
        Gate::X(_) => vec![ZERO, ONE, ONE, ZERO],
        Gate::Y(_) => vec![ZERO, -I, I, ZERO],
        Gate::Z(_) => vec![ONE, ZERO, ZERO, -ONE],
        Gate::T(_) => vec![ONE, ZERO, ZERO, expi(core::f64::consts::FRAC_PI_4)],
        Gate::Tdg(_) => vec![ONE, ZERO, ZERO, expi(-core::f64::consts::FRAC_PI_4)],
        Gate::Rz(_, t) => vec![expi(-t / 2.0), ZERO, ZERO, expi(t / 2.0)],
        Gate::Rx(_, t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            vec![c(co, 0.0), c(0.0, -si), c(0.0, -si), c(co, 0.0)]
        }
        Gate::Ry(_, t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            vec![c(co, 0.0), c(-si, 0.0), c(si, 0.0), c(co, 0.0)]
        }
        Gate::U1(_, l) => vec![ONE, ZERO, ZERO, expi(l)],
        Gate::U2(_, p, l) => u3(core::f64::consts::FRAC_PI_2, p, l),
        Gate::U3(_, t, p, l) => u3(t, p, l),
        Gate::Cx(..) => perm_matrix(4, &[0, 1, 3, 2]),
        Gate::Swap(..) => perm_matrix(4, &[0, 2, 1, 3]),
        Gate::Ccx(..) => perm_matrix(8, &[0, 1, 2, 3, 4, 5, 7, 6]),
        Gate::Cz(..) => diag(&[ONE, ONE, ONE, -ONE]),
        Gate::CPhase(_, _, l) => diag(&[ONE, ONE, ONE, expi(l)]),
        Gate::Measure { .. } | Gate::Barrier(_) => return None,
    };
    Some(m)
}

fn u3(t: f64, p: f64, l: f64) -> Vec<C64> {
    let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
    vec![
        c(co, 0.0),
        -expi(l) * si,
        expi(p) * si,
        expi(p + l) * co,
    ]
}

fn perm_matrix(d: usize, perm: &[usize]) -> Vec<C64> {
    let mut m = vec![ZERO; d * d];
    for (col, &row) in perm.iter().enumerate() {
        m[row * d + col] = ONE;
    }
    m
}

fn diag(vals: &[C64]) -> Vec<C64> {
    let d = vals.len();
    let mut m = vec![ZERO; d * d];
    for (i, &v) in vals.iter().enumerate() {
        m[i * d + i] = v;
    }
    m
}

fn check_size(n: usize, max: usize) -> Result<(), OracleError> {
    if n > max {
        Err(OracleError::TooManyQubits { n, max })
    } else {
        Ok(())
    }
}

/// Product of the circuit's gates, first gate rightmost.
pub fn circuit_unitary(c: &GateCircuit) -> Result<DenseMatrix, OracleError> {
    if let Some(i) = c.ops().iter().position(|g| matches!(g, Gate::Measure { .. })) {
        return Err(OracleError::Measurement(i));
    }
    unitary_skipping_directives(c)
}

fn unitary_skipping_directives(c: &GateCircuit) -> Result<DenseMatrix, OracleError> {
    let n = c.num_qubits();
    check_size(n, MAX_UNITARY_QUBITS)?;
    let mut u = DenseMatrix::identity(1 << n);
    let mut qs = Vec::with_capacity(3);
    for g in c.ops() {
        if let Some(m) = gate_matrix(g) {
            qs.clear();
            qs.extend(g.qubits());
            u.apply_left(n, &qs, &m);
        }
    }
    Ok(u)
}

pub fn pauli_matrix(p: &PauliString) -> Result<DenseMatrix, OracleError> {
    let n = p.num_qubits();
    check_size(n, MAX_UNITARY_QUBITS)?;
    let mut m = DenseMatrix::identity(1);
    for q in 0..n {
        let f = match p.get(q).expect("in range") {
            Pauli::I => vec![ONE, ZERO, ZERO, ONE],
            Pauli::X => vec![ZERO, ONE, ONE, ZERO],
            Pauli::Y => vec![ZERO, -I, I, ZERO],
            Pauli::Z => vec![ONE, ZERO, ZERO, -ONE],
        };
        m = m.kron(&DenseMatrix::from_rows(2, f));
    }
    Ok(if p.is_negative() { m.scale(-ONE) } else { m })
}

/// `exp(-iθP/2) = cos(θ/2) I - i sin(θ/2) P`.
pub fn pauli_exponential(p: &PauliString, theta: f64) -> Result<DenseMatrix, OracleError> {
    let pm = pauli_matrix(p)?;
    let id = DenseMatrix::identity(pm.dim());
    Ok(id
        .scale(c((theta / 2.0).cos(), 0.0))
        .add(&pm.scale(c(0.0, -(theta / 2.0).sin()))))
}

pub fn rotation_matrix(r: &PauliRotation) -> Result<DenseMatrix, OracleError> {
    pauli_exponential(r.pauli(), r.angle().radians())
}

/// `|tr(U† V)| / dim`, equal to 1 iff `U = e^{iφ} V`.
pub fn projective_overlap(u: &DenseMatrix, v: &DenseMatrix) -> f64 {
    u.adjoint().mul(v).trace().norm() / u.dim() as f64
}

/// Rebuilds the operator a PBC circuit stands for: the retained Clifford
/// trace, then the absorbed Clifford rotations, then the rotation product
/// (earliest rotation rightmost).
pub fn pbc_operator(pbc: &PbcCircuit) -> Result<DenseMatrix, OracleError> {
    let n = pbc.num_qubits();
    check_size(n, MAX_PBC_QUBITS)?;
    let trace = GateCircuit::from_ops(n, 0, pbc.clifford_trace().to_vec())
        .expect("trace indices are valid");
    let mut b = unitary_skipping_directives(&trace)?;
    for k in pbc.absorbed() {
        b = b.mul(&rotation_matrix(k)?);
    }
    let mut rot = DenseMatrix::identity(1 << n);
    for r in pbc.rotations() {
        rot = rotation_matrix(r)?.mul(&rot);
    }
    Ok(b.mul(&rot))
}

/// `|tr(U_c† B)| / 2^n` between a circuit and its PBC form.
pub fn pbc_equivalence(c: &GateCircuit, pbc: &PbcCircuit) -> Result<f64, OracleError> {
    check_size(c.num_qubits(), MAX_PBC_QUBITS)?;
    let u = unitary_skipping_directives(c)?;
    let b = pbc_operator(pbc)?;
    Ok(projective_overlap(&u, &b))
}

/// Checks that every measurement row equals `C† Z_q C` for the operator
/// `C = trace · absorbed` the PBC form carries.
pub fn measurement_rows_consistent(pbc: &PbcCircuit, tol: f64) -> Result<bool, OracleError> {
    let n = pbc.num_qubits();
    check_size(n, MAX_PBC_QUBITS)?;
    let trace = GateCircuit::from_ops(n, 0, pbc.clifford_trace().to_vec())
        .expect("trace indices are valid");
    let mut cl = unitary_skipping_directives(&trace)?;
    for k in pbc.absorbed() {
        cl = cl.mul(&rotation_matrix(k)?);
    }
    for m in pbc.measurements().rows() {
        let z = pauli_matrix(&PauliString::single(n, m.qubit, Pauli::Z).expect("in range"))?;
        let expected = cl.adjoint().mul(&z).mul(&cl);
        if expected.frobenius_distance(&pauli_matrix(&m.pauli)?) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ c_k P_k` as a dense Hermitian matrix.
pub fn hamiltonian_matrix(terms: &[(PauliString, f64)], n: usize) -> Result<DenseMatrix, OracleError> {
    check_size(n, MAX_UNITARY_QUBITS)?;
    let mut h = DenseMatrix::zeros(1 << n);
    for (p, coeff) in terms {
        h = h.add(&pauli_matrix(p)?.scale(c(*coeff, 0.0)));
    }
    Ok(h)
}

/// `exp(-i H t)` by scaling and squaring a truncated Taylor series.
pub fn evolution_operator(h: &DenseMatrix, t: f64) -> DenseMatrix {
    let a = h.scale(c(0.0, -t));
    let norm = a.data.iter().map(|v| v.norm()).sum::<f64>().max(1e-300);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a.scale(c(scale, 0.0));
    let mut sum = DenseMatrix::identity(h.dim());
    let mut term = DenseMatrix::identity(h.dim());
    for k in 1..=24 {
        term = term.mul(&a).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// Modularity of a partition, computed from a dense weight matrix.
fn modularity_dense(w: &[f64], n: usize, labels: &[usize]) -> f64 {
    let m: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| w[i * n + j]).sum();
    if m == 0.0 {
        return 0.0;
    }
    let k = labels.iter().copied().max().map_or(0, |x| x + 1);
    let mut inside = vec![0.0; k];
    let mut degree = vec![0.0; k];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                degree[labels[i]] += w[i * n + j];
                if j > i && labels[i] == labels[j] {
                    inside[labels[i]] += w[i * n + j];
                }
            }
        }
    }
    (0..k)
        .map(|c| inside[c] / m - (degree[c] / (2.0 * m)).powi(2))
        .sum()
}

/// Maximum modularity over every set partition of the nodes, enumerated as
/// restricted growth strings in lexicographic order (first maximum wins).
pub fn exhaustive_modularity(g: &InteractionGraph) -> Result<(f64, Vec<usize>), OracleError> {
    let n = g.num_nodes();
    if n > MAX_MODULARITY_NODES {
        return Err(OracleError::TooManyNodes {
            n,
            max: MAX_MODULARITY_NODES,
        });
    }
    if n == 0 {
        return Ok((0.0, Vec::new()));
    }
    let mut w = vec![0.0; n * n];
    for (&(i, j), &wt) in g.edges() {
        w[i * n + j] = wt as f64;
        w[j * n + i] = wt as f64;
    }
    let mut labels = vec![0usize; n];
    let mut best = (modularity_dense(&w, n, &labels), labels.clone());
    // maxes[i] = max(labels[..i])
    loop {
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(best);
            }
            let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in labels.iter_mut().skip(i + 1) {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
        let q = modularity_dense(&w, n, &labels);
        if q > best.0 + 1e-12 {
            best = (q, labels.clone());
        }
    }
}
