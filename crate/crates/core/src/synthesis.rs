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

//! Single-qubit Clifford+T synthesis by the Solovay-Kitaev recursion with
//! balanced group commutators.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::circuit::{Gate, GateCircuit};
// Inherent f64 math is std-only; test builds link std and shadow this.
#[allow(unused_imports)]
use num_traits::Float;

pub const DEFAULT_BASE_LENGTH: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error("op {index} ({gate}) must be normalized to Clifford+Rz before synthesis")]
    NotNormalized { index: usize, gate: &'static str },
    #[error("op {index} ({gate}) is outside the Clifford+T gate set")]
    NotCliffordT { index: usize, gate: &'static str },
    #[error("distance {0} is outside [0, 1]")]
    DistanceOutOfRange(f64),
    #[error("commutator target is {0} from the identity, beyond 0.5")]
    TooFarFromIdentity(f64),
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(pub [C64; 4]);

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2([
        C64 { re: 1.0, im: 0.0 },
        C64 { re: 0.0, im: 0.0 },
        C64 { re: 0.0, im: 0.0 },
        C64 { re: 1.0, im: 0.0 },
    ]);

    pub fn rz(theta: f64) -> Self {
        let h = theta / 2.0;
        Unitary2([C64::new(h.cos(), -h.sin()), C64::ZERO, C64::ZERO, C64::new(h.cos(), h.sin())])
    }

    pub fn rx(theta: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        Unitary2([C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0)])
    }

    pub fn ry(theta: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        Unitary2([C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)])
    }

    /// `exp(-iθ n·σ/2)` for a unit axis `n`.
    pub fn rotation(axis: [f64; 3], theta: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let [nx, ny, nz] = axis;
        Unitary2([
            C64::new(c, -s * nz),
            C64::new(-s * ny, -s * nx),
            C64::new(s * ny, -s * nx),
            C64::new(c, s * nz),
        ])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Unitary2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = self.0;
        Unitary2([a.conj(), c.conj(), b.conj(), d.conj()])
    }

    pub fn trace(&self) -> C64 {
        self.0[0] + self.0[3]
    }

    pub fn det(&self) -> C64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    pub fn scale(&self, s: C64) -> Self {
        Unitary2(self.0.map(|v| v * s))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let p = self.adjoint().mul(self);
        p.0.iter()
            .zip(Self::IDENTITY.0.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            < tol
    }

    /// `|tr(U† V)|`.
    fn overlap(&self, v: &Self) -> f64 {
        let u = &self.0;
        let v = &v.0;
        (u[0].conj() * v[0] + u[1].conj() * v[1] + u[2].conj() * v[2] + u[3].conj() * v[3]).norm()
    }

    /// SU(2) representative with non-negative real part of `a`, returned as
    /// a rotation angle in `[0, π]` and unit axis.
    pub fn axis_angle(&self) -> (f64, [f64; 3]) {
        let root = self.det().sqrt();
        let mut m = self.scale(root.inv());
        if m.0[0].re < 0.0 {
            m = m.scale(C64::new(-1.0, 0.0));
        }
        let (a, b) = (m.0[0], m.0[1]);
        let c = a.re.clamp(-1.0, 1.0);
        let v = [-b.im, -b.re, -a.im];
        let s = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if s < 1e-15 {
            return (0.0, [0.0, 0.0, 1.0]);
        }
        (2.0 * s.atan2(c), [v[0] / s, v[1] / s, v[2] / s])
    }
}

/// `sqrt(max(0, 1 - |tr(U†V)|/2))`, zero iff `U = e^{iφ}V`.
///
/// Evaluated as `√2 sin(α/4)` with `α` the rotation angle of `U†V`, which
/// is the same quantity without the cancellation near zero.
pub fn distance(u: &Unitary2, v: &Unitary2) -> f64 {
    let (alpha, _) = u.adjoint().mul(v).axis_angle();
    core::f64::consts::SQRT_2 * (alpha / 4.0).sin()
}

/// `F = (1 - d²)²`, i.e. `(|tr(U†V)|/2)²`.
pub fn fidelity_from_distance(d: f64) -> Result<f64, SynthesisError> {
    if !(0.0..=1.0).contains(&d) {
        return Err(SynthesisError::DistanceOutOfRange(d));
    }
    let x = 1.0 - d * d;
    Ok(x * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 7] = [
        Letter::H,
        Letter::S,
        Letter::Sdg,
        Letter::T,
        Letter::Tdg,
        Letter::X,
        Letter::Z,
    ];

    pub fn inverse(self) -> Self {
        match self {
            Letter::S => Letter::Sdg,
            Letter::Sdg => Letter::S,
            Letter::T => Letter::Tdg,
            Letter::Tdg => Letter::T,
            other => other,
        }
    }

    pub fn matrix(self) -> Unitary2 {
        let (z, o) = (C64::ZERO, C64::ONE);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let t = C64::new(FRAC_PI_4.cos(), FRAC_PI_4.sin());
        Unitary2(match self {
            Letter::H => [h, h, h, -h],
            Letter::S => [o, z, z, C64::I],
            Letter::Sdg => [o, z, z, -C64::I],
            Letter::T => [o, z, z, t],
            Letter::Tdg => [o, z, z, t.conj()],
            Letter::X => [z, o, o, z],
            Letter::Z => [o, z, z, -o],
        })
    }

    pub fn is_t(self) -> bool {
        matches!(self, Letter::T | Letter::Tdg)
    }

    pub fn gate(self, q: usize) -> Gate {
        match self {
            Letter::H => Gate::H(q),
            Letter::S => Gate::S(q),
            Letter::Sdg => Gate::Sdg(q),
            Letter::T => Gate::T(q),
            Letter::Tdg => Gate::Tdg(q),
            Letter::X => Gate::X(q),
            Letter::Z => Gate::Z(q),
        }
    }
}

/// Letters applied in sequence order, so the operator is
/// `M(letters[k-1]) ⋯ M(letters[0])`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateWord {
    letters: Vec<Letter>,
    matrix: Unitary2,
}

impl GateWord {
    pub fn identity() -> Self {
        GateWord {
            letters: Vec::new(),
            matrix: Unitary2::IDENTITY,
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let matrix = letters
            .iter()
            .fold(Unitary2::IDENTITY, |acc, l| l.matrix().mul(&acc));
        GateWord { letters, matrix }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn matrix(&self) -> &Unitary2 {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn t_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_t()).count()
    }

    pub fn inverse(&self) -> Self {
        GateWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GateWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&next.letters);
        GateWord {
            letters,
            matrix: next.matrix.mul(&self.matrix),
        }
    }
}

/// Phase-canonical rounded coordinates used to deduplicate projectively.
fn projective_key(u: &Unitary2) -> [i64; 8] {
    let pivot = if u.0[0].norm() > 1e-6 { u.0[0] } else { u.0[1] };
    let phase = pivot.conj() / pivot.norm();
    let mut key = [0i64; 8];
    for (i, v) in u.0.iter().enumerate() {
        let w = v * phase;
        key[2 * i] = (w.re * 1e9).round() as i64;
        key[2 * i + 1] = (w.im * 1e9).round() as i64;
    }
    key
}

/// Every word of length at most `L0`, one shortest representative per
/// projective unitary.
#[derive(Debug, Clone)]
pub struct BaseLibrary {
    max_length: usize,
    entries: Vec<GateWord>,
}

impl BaseLibrary {
    /// Breadth-first enumeration, so the first word reaching a unitary is a
    /// shortest one.
    pub fn build(max_length: usize) -> Self {
        let mut seen: BTreeMap<[i64; 8], ()> = BTreeMap::new();
        let mut entries = vec![GateWord::identity()];
        seen.insert(projective_key(&Unitary2::IDENTITY), ());
        let mut frontier = vec![0usize];
        for _ in 0..max_length {
            let mut next = Vec::new();
            for &i in &frontier {
                for l in Letter::ALL {
                    let m = l.matrix().mul(&entries[i].matrix);
                    let key = projective_key(&m);
                    if seen.contains_key(&key) {
                        continue;
                    }
                    seen.insert(key, ());
                    let mut letters = entries[i].letters.clone();
                    letters.push(l);
                    next.push(entries.len());
                    entries.push(GateWord { letters, matrix: m });
                }
            }
            frontier = next;
        }
        BaseLibrary {
            max_length,
            entries,
        }
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn entries(&self) -> &[GateWord] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Closest entry by exact linear scan; ties go to the earliest (shortest)
    /// entry.
    pub fn nearest(&self, u: &Unitary2) -> &GateWord {
        let mut best = 0;
        let mut best_overlap = f64::NEG_INFINITY;
        for (i, e) in self.entries.iter().enumerate() {
            let o = e.matrix.overlap(u);
            if o > best_overlap + 1e-14 {
                best = i;
                best_overlap = o;
            }
        }
        &self.entries[best]
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// SU(2) element rotating the Bloch vector `from` onto `to`.
fn aligning_rotation(from: [f64; 3], to: [f64; 3]) -> Unitary2 {
    let dot = (from[0] * to[0] + from[1] * to[1] + from[2] * to[2]).clamp(-1.0, 1.0);
    let k = cross(from, to);
    let s = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if s < 1e-14 {
        if dot > 0.0 {
            return Unitary2::IDENTITY;
        }
        // Antiparallel: half turn about any perpendicular axis.
        let p = if from[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let k = cross(from, p);
        let s = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        return Unitary2::rotation([k[0] / s, k[1] / s, k[2] / s], core::f64::consts::PI);
    }
    Unitary2::rotation([k[0] / s, k[1] / s, k[2] / s], s.atan2(dot))
}

/// Balanced commutator: `V`, `W` rotate by the same angle and
/// `V W V† W† = Δ` up to global phase.
pub fn group_commutator(delta: &Unitary2) -> Result<(Unitary2, Unitary2), SynthesisError> {
    let d = distance(delta, &Unitary2::IDENTITY);
    if d >= 0.5 {
        return Err(SynthesisError::TooFarFromIdentity(d));
    }
    let (theta, axis) = delta.axis_angle();
    if theta < 1e-15 {
        return Ok((Unitary2::IDENTITY, Unitary2::IDENTITY));
    }
    // sin(θ/2) = 2 sin²(φ/2) sqrt(1 - sin⁴(φ/2))
    let s2 = ((1.0 - (theta / 2.0).cos()) / 2.0).sqrt();
    let phi = 2.0 * s2.sqrt().asin();
    let v = Unitary2::rx(phi);
    let w = Unitary2::ry(phi);
    let comm = v.mul(&w).mul(&v.adjoint()).mul(&w.adjoint());
    let (_, comm_axis) = comm.axis_angle();
    let s = aligning_rotation(comm_axis, axis);
    Ok((s.mul(&v).mul(&s.adjoint()), s.mul(&w).mul(&s.adjoint())))
}

/// Solovay-Kitaev result with the number of levels where the commutator
/// step was skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct SkResult {
    pub word: GateWord,
    pub fallbacks: usize,
}

pub fn solovay_kitaev(lib: &BaseLibrary, u: &Unitary2, depth: usize) -> SkResult {
    if depth == 0 {
        return SkResult {
            word: lib.nearest(u).clone(),
            fallbacks: 0,
        };
    }
    let prev = solovay_kitaev(lib, u, depth - 1);
    let delta = u.mul(&prev.word.matrix.adjoint());
    let (v, w) = match group_commutator(&delta) {
        Ok(vw) => vw,
        Err(_) => {
            return SkResult {
                word: prev.word,
                fallbacks: prev.fallbacks + 1,
            }
        }
    };
    let vn = solovay_kitaev(lib, &v, depth - 1);
    let wn = solovay_kitaev(lib, &w, depth - 1);
    // V W V† W† U_{n-1}: U_{n-1} acts first.
    let word = prev
        .word
        .then(&wn.word.inverse())
        .then(&vn.word.inverse())
        .then(&wn.word)
        .then(&vn.word);
    SkResult {
        word,
        fallbacks: prev.fallbacks + vn.fallbacks + wn.fallbacks,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkConfig {
    pub depth: usize,
    pub base_length: usize,
}

impl SkConfig {
    pub fn preset(label: &str) -> Option<Self> {
        let depth = match label {
            "sk-1" => 1,
            "sk-2" => 2,
            _ => return None,
        };
        Some(SkConfig {
            depth,
            base_length: DEFAULT_BASE_LENGTH,
        })
    }
}

impl Default for SkConfig {
    fn default() -> Self {
        SkConfig {
            depth: 1,
            base_length: DEFAULT_BASE_LENGTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynthesisReport {
    pub per_gate_distance: Vec<f64>,
    pub per_gate_fidelity: Vec<f64>,
    pub per_gate_t_count: Vec<usize>,
    pub fidelity_product: f64,
    /// T and T† gates in the whole output circuit.
    pub t_count: usize,
    pub fallbacks: usize,
}

/// Reusable synthesizer holding the base library and an angle memo.
#[derive(Debug, Clone)]
pub struct Synthesizer {
    lib: BaseLibrary,
    depth: usize,
    memo: BTreeMap<u64, (Vec<Letter>, f64, usize)>,
}

impl Synthesizer {
    pub fn new(cfg: SkConfig) -> Self {
        Self::with_library(BaseLibrary::build(cfg.base_length), cfg.depth)
    }

    pub fn with_library(lib: BaseLibrary, depth: usize) -> Self {
        Synthesizer {
            lib,
            depth,
            memo: BTreeMap::new(),
        }
    }

    pub fn library(&self) -> &BaseLibrary {
        &self.lib
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Word for `Rz(θ)` and its distance to the target.
    pub fn synthesize_rz(&mut self, theta: f64) -> (Vec<Letter>, f64, usize) {
        if let Some(hit) = self.memo.get(&theta.to_bits()) {
            return hit.clone();
        }
        let target = Unitary2::rz(theta);
        let r = solovay_kitaev(&self.lib, &target, self.depth);
        let word = GateWord::from_letters(r.word.letters);
        let d = distance(word.matrix(), &target);
        let out = (word.letters, d, r.fallbacks);
        self.memo.insert(theta.to_bits(), out.clone());
        out
    }

    /// Replaces every `Rz` with its synthesized word; other gates are copied.
    pub fn synthesize_circuit(
        &mut self,
        c: &GateCircuit,
    ) -> Result<(GateCircuit, SynthesisReport), SynthesisError> {
        for (index, g) in c.ops().iter().enumerate() {
            let k = g.kind();
            if !(k.is_basic_clifford() || k.is_t_like() || k.is_directive() || matches!(g, Gate::Rz(..))) {
                return Err(SynthesisError::NotNormalized {
                    index,
                    gate: k.name(),
                });
            }
        }
        let mut ops = Vec::with_capacity(c.len());
        let mut report = SynthesisReport {
            fidelity_product: 1.0,
            ..SynthesisReport::default()
        };
        for g in c.ops() {
            match *g {
                Gate::Rz(q, theta) => {
                    let (letters, d, fallbacks) = self.synthesize_rz(theta);
                    let f = fidelity_from_distance(d)?;
                    report.per_gate_distance.push(d);
                    report.per_gate_fidelity.push(f);
                    report.per_gate_t_count.push(letters.iter().filter(|l| l.is_t()).count());
                    report.fidelity_product *= f;
                    report.fallbacks += fallbacks;
                    ops.extend(letters.iter().map(|l| l.gate(q)));
                }
                _ => ops.push(g.clone()),
            }
        }
        report.t_count = ops.iter().filter(|g| g.kind().is_t_like()).count();
        let out = GateCircuit::from_ops(c.num_qubits(), c.num_clbits(), ops)
            .expect("synthesis preserves indices");
        Ok((out, report))
    }
}

/// Validates an externally synthesized Clifford+T circuit and returns its
/// T count.
pub fn ingest_external_ct(c: &GateCircuit) -> Result<usize, SynthesisError> {
    for (index, g) in c.ops().iter().enumerate() {
        let k = g.kind();
        if !(k.is_basic_clifford() || k.is_t_like() || k.is_directive()) {
            return Err(SynthesisError::NotCliffordT {
                index,
                gate: k.name(),
            });
        }
    }
    Ok(c.t_count())
}
