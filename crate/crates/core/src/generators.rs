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

//! Benchmark circuit families: QFT, ripple-carry adder and first-order
//! Trotterized lattice models.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::circuit::{Gate, GateCircuit};
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("unknown model `{0}`")]
    UnknownModel(alloc::string::String),
    #[error("{model} needs a {needed}D lattice")]
    LatticeDimension { model: ModelKind, needed: usize },
    #[error("lattice extents must be positive")]
    EmptyLattice,
    #[error("mode indices {p} and {q} must differ and be below {n}")]
    BadModes { p: usize, q: usize, n: usize },
}

/// Textbook QFT: per qubit `k`, an `H` then controlled phases `π/2^(j-k)`
/// from each later qubit `j`, optionally followed by the bit-reversal swaps.
pub fn gen_qft(n: usize, swaps: bool) -> GateCircuit {
    let mut c = GateCircuit::new(n, 0);
    for k in 0..n {
        c.push_unchecked(Gate::H(k));
        for j in k + 1..n {
            let lambda = PI / (1u64 << (j - k)) as f64;
            c.push_unchecked(Gate::CPhase(j, k, lambda));
        }
    }
    if swaps {
        for k in 0..n / 2 {
            c.push_unchecked(Gate::Swap(k, n - 1 - k));
        }
    }
    c
}

/// Qubit layout of the ripple-carry adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderLayout {
    pub bits: usize,
}

impl AdderLayout {
    pub fn carry_in(&self) -> usize {
        0
    }
    pub fn a(&self, i: usize) -> usize {
        1 + i
    }
    pub fn b(&self, i: usize) -> usize {
        1 + self.bits + i
    }
    pub fn carry_out(&self) -> usize {
        2 * self.bits + 1
    }
    pub fn num_qubits(&self) -> usize {
        2 * self.bits + 2
    }
}

fn maj(c: &mut GateCircuit, x: usize, y: usize, z: usize) {
    c.push_unchecked(Gate::Cx(z, y));
    c.push_unchecked(Gate::Cx(z, x));
    c.push_unchecked(Gate::Ccx(x, y, z));
}

fn uma(c: &mut GateCircuit, x: usize, y: usize, z: usize) {
    c.push_unchecked(Gate::Ccx(x, y, z));
    c.push_unchecked(Gate::Cx(z, x));
    c.push_unchecked(Gate::Cx(x, y));
}

/// Cuccaro ripple-carry adder on `2·bits + 2` qubits; `b` is overwritten
/// with the low bits of `a + b` and the carry lands on the last qubit.
pub fn gen_adder(bits: usize) -> GateCircuit {
    let l = AdderLayout { bits };
    let mut c = GateCircuit::new(l.num_qubits(), 0);
    if bits == 0 {
        return c;
    }
    maj(&mut c, l.carry_in(), l.b(0), l.a(0));
    for i in 1..bits {
        maj(&mut c, l.a(i - 1), l.b(i), l.a(i));
    }
    c.push_unchecked(Gate::Cx(l.a(bits - 1), l.carry_out()));
    for i in (1..bits).rev() {
        uma(&mut c, l.a(i - 1), l.b(i), l.a(i));
    }
    uma(&mut c, l.carry_in(), l.b(0), l.a(0));
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    pub extents: Vec<usize>,
    pub periodic: bool,
}

impl LatticeSpec {
    pub fn chain(sites: usize, periodic: bool) -> Self {
        LatticeSpec {
            extents: vec![sites],
            periodic,
        }
    }

    pub fn grid(lx: usize, ly: usize, periodic: bool) -> Self {
        LatticeSpec {
            extents: vec![lx, ly],
            periodic,
        }
    }

    pub fn dimension(&self) -> usize {
        self.extents.len()
    }

    pub fn num_sites(&self) -> usize {
        self.extents.iter().product()
    }

    /// Nearest-neighbour pairs. A periodic direction wraps only when it has
    /// more than two sites, so no bond is doubled.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        match self.extents.as_slice() {
            [l] => {
                for i in 0..l.saturating_sub(1) {
                    out.push((i, i + 1));
                }
                if self.periodic && *l > 2 {
                    out.push((l - 1, 0));
                }
            }
            [lx, ly] => {
                let site = |x: usize, y: usize| y * lx + x;
                for y in 0..*ly {
                    for x in 0..*lx {
                        if x + 1 < *lx {
                            out.push((site(x, y), site(x + 1, y)));
                        } else if self.periodic && *lx > 2 {
                            out.push((site(x, y), site(0, y)));
                        }
                        if y + 1 < *ly {
                            out.push((site(x, y), site(x, y + 1)));
                        } else if self.periodic && *ly > 2 {
                            out.push((site(x, y), site(x, 0)));
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Ising1d,
    Heisenberg1d,
    Heisenberg2d,
    FermiHubbard1d,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Ising1d,
        ModelKind::Heisenberg1d,
        ModelKind::Heisenberg2d,
        ModelKind::FermiHubbard1d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Ising1d => "ising_1d",
            ModelKind::Heisenberg1d => "heisenberg_1d",
            ModelKind::Heisenberg2d => "heisenberg_2d",
            ModelKind::FermiHubbard1d => "fermi_hubbard_1d",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            ModelKind::Heisenberg2d => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| GeneratorError::UnknownModel(s.into()))
    }
}

/// Model couplings; unused fields are ignored by a given model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub j: f64,
    pub h: f64,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub t: f64,
    pub u: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            j: 1.0,
            h: 0.5,
            jx: 1.0,
            jy: 1.0,
            jz: 1.0,
            t: 1.0,
            u: 0.0,
        }
    }
}

/// `Σ c_k P_k` with every `P_k` on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianTermList {
    pub n: usize,
    pub terms: Vec<(PauliString, f64)>,
}

impl HamiltonianTermList {
    pub fn new(n: usize) -> Self {
        HamiltonianTermList {
            n,
            terms: Vec::new(),
        }
    }

    /// Appends a term built from `(qubit, Pauli)` factors; zero
    /// coefficients are dropped.
    pub fn push(&mut self, factors: &[(usize, Pauli)], coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let mut p = PauliString::identity(self.n);
        for &(q, f) in factors {
            p.set(q, f).expect("factor within register");
        }
        self.terms.push((p, coeff));
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `c†_p c_q + c†_q c_p ↦ ½(X_p Z⋯Z X_q + Y_p Z⋯Z Y_q)`.
pub fn jordan_wigner(p: usize, q: usize, n_modes: usize) -> Result<HamiltonianTermList, GeneratorError> {
    if p == q || p >= n_modes || q >= n_modes {
        return Err(GeneratorError::BadModes { p, q, n: n_modes });
    }
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let mut out = HamiltonianTermList::new(n_modes);
    for end in [Pauli::X, Pauli::Y] {
        let mut factors = vec![(lo, end)];
        factors.extend((lo + 1..hi).map(|k| (k, Pauli::Z)));
        factors.push((hi, end));
        out.push(&factors, 0.5);
    }
    Ok(out)
}

/// Pauli decomposition with spin-½ operators `S = σ/2` folded in:
/// Ising `J/4 ZZ - h/2 Z`, Heisenberg `(Jx XX + Jy YY + Jz ZZ)/4`, and
/// Fermi-Hubbard with spin-up modes `0..L` then spin-down `L..2L`.
pub fn pauli_terms(
    model: ModelKind,
    lattice: &LatticeSpec,
    params: &ModelParams,
) -> Result<HamiltonianTermList, GeneratorError> {
    if lattice.dimension() != model.dimension() {
        return Err(GeneratorError::LatticeDimension {
            model,
            needed: model.dimension(),
        });
    }
    if lattice.extents.contains(&0) {
        return Err(GeneratorError::EmptyLattice);
    }
    let sites = lattice.num_sites();
    let edges = lattice.edges();
    Ok(match model {
        ModelKind::Ising1d => {
            let mut h = HamiltonianTermList::new(sites);
            for &(i, j) in &edges {
                h.push(&[(i, Pauli::Z), (j, Pauli::Z)], params.j / 4.0);
            }
            for i in 0..sites {
                h.push(&[(i, Pauli::Z)], -params.h / 2.0);
            }
            h
        }
        ModelKind::Heisenberg1d | ModelKind::Heisenberg2d => {
            let mut h = HamiltonianTermList::new(sites);
            for &(i, j) in &edges {
                h.push(&[(i, Pauli::X), (j, Pauli::X)], params.jx / 4.0);
                h.push(&[(i, Pauli::Y), (j, Pauli::Y)], params.jy / 4.0);
                h.push(&[(i, Pauli::Z), (j, Pauli::Z)], params.jz / 4.0);
            }
            h
        }
        ModelKind::FermiHubbard1d => {
            let modes = 2 * sites;
            let mut h = HamiltonianTermList::new(modes);
            for &(i, j) in &edges {
                for offset in [0, sites] {
                    let hop = jordan_wigner(i + offset, j + offset, modes)?;
                    for (p, c) in hop.terms {
                        h.terms.push((p, -params.t * c));
                    }
                }
            }
            // U n↑n↓ = U/4 (I - Z↑ - Z↓ + Z↑Z↓), identity dropped.
            for i in 0..sites {
                let (up, down) = (i, i + sites);
                h.push(&[(up, Pauli::Z)], -params.u / 4.0);
                h.push(&[(down, Pauli::Z)], -params.u / 4.0);
                h.push(&[(up, Pauli::Z), (down, Pauli::Z)], params.u / 4.0);
            }
            h
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrotterConfig {
    pub steps: usize,
    pub dt: f64,
}

impl TrotterConfig {
    pub const SHORT: TrotterConfig = TrotterConfig { steps: 5, dt: 0.05 };

    pub fn total_time(&self) -> f64 {
        self.steps as f64 * self.dt
    }
}

impl Default for TrotterConfig {
    fn default() -> Self {
        TrotterConfig { steps: 20, dt: 0.05 }
    }
}

/// `exp(-iθP/2)`: basis change onto `Z⋯Z`, CNOT ladder onto the last
/// support qubit, `Rz(θ)`, then the mirror image.
pub fn pauli_rotation_gates(p: &PauliString, theta: f64, out: &mut Vec<Gate>) {
    let support: Vec<usize> = p.support().collect();
    let Some(&last) = support.last() else {
        return;
    };
    for &q in &support {
        match p.get(q).expect("in range") {
            Pauli::X => out.push(Gate::H(q)),
            Pauli::Y => {
                out.push(Gate::Sdg(q));
                out.push(Gate::H(q));
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        out.push(Gate::Cx(w[0], w[1]));
    }
    let sign = if p.is_negative() { -1.0 } else { 1.0 };
    out.push(Gate::Rz(last, sign * theta));
    for w in support.windows(2).rev() {
        out.push(Gate::Cx(w[0], w[1]));
    }
    for &q in &support {
        match p.get(q).expect("in range") {
            Pauli::X => out.push(Gate::H(q)),
            Pauli::Y => {
                out.push(Gate::H(q));
                out.push(Gate::S(q));
            }
            _ => {}
        }
    }
}

/// First-order product formula: `steps` repetitions of
/// `Π_k exp(-i c_k dt P_k)` in term order.
pub fn trotterize(h: &HamiltonianTermList, cfg: &TrotterConfig) -> GateCircuit {
    let mut step = Vec::new();
    for (p, c) in &h.terms {
        pauli_rotation_gates(p, 2.0 * c * cfg.dt, &mut step);
    }
    let mut ops = Vec::with_capacity(step.len() * cfg.steps);
    for _ in 0..cfg.steps {
        ops.extend(step.iter().cloned());
    }
    GateCircuit::from_ops(h.n, 0, ops).expect("terms fit the register")
}
