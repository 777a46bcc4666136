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

//! Symplectic Pauli strings and their Clifford conjugation rules.
//!
//! A Pauli string on `n` qubits is stored as two word-packed bit vectors
//! (`x` and `z`) plus a sign bit. Per qubit the encoding is
//! `I = (0,0)`, `X = (1,0)`, `Z = (0,1)`, `Y = (1,1)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("qubit {qubit} out of range for {n}-qubit Pauli")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("invalid Pauli character {0:?}")]
    InvalidChar(char),
    #[error("empty Pauli string")]
    Empty,
    #[error("identity Pauli is not a valid operand here")]
    IdentityOperand,
    #[error("Pauli supports overlap")]
    OverlappingSupport,
}

pub(crate) const fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub const fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    const fn index(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = PauliError;

    fn try_from(c: char) -> Result<Self, Self::Error> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::InvalidChar(other)),
        }
    }
}

/// An `n`-qubit Pauli operator with a real sign, `±P_0 ⊗ … ⊗ P_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
            negative: false,
        }
    }

    /// `P` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Result<Self, PauliError> {
        let mut out = Self::identity(n);
        out.set(q, p)?;
        Ok(out)
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut out = Self::identity(paulis.len());
        for (q, &p) in paulis.iter().enumerate() {
            out.set_unchecked(q, p);
        }
        out
    }

    pub(crate) fn from_words(n: usize, x: Vec<u64>, z: Vec<u64>, negative: bool) -> Self {
        debug_assert_eq!(x.len(), words_for(n));
        debug_assert_eq!(z.len(), words_for(n));
        PauliString { n, x, z, negative }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.negate();
        out
    }

    /// The same operator with the sign forced to `+1`.
    pub fn unsigned(&self) -> Self {
        let mut out = self.clone();
        out.negative = false;
        out
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn get(&self, q: usize) -> Result<Pauli, PauliError> {
        self.check_qubit(q)?;
        Ok(self.get_unchecked(q))
    }

    pub(crate) fn get_unchecked(&self, q: usize) -> Pauli {
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) -> Result<(), PauliError> {
        self.check_qubit(q)?;
        self.set_unchecked(q, p);
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, q: usize, p: Pauli) {
        let (w, b) = (q / 64, q % 64);
        let (px, pz) = p.bits();
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if px { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if pz { mask } else { 0 };
    }

    fn check_qubit(&self, q: usize) -> Result<(), PauliError> {
        if q < self.n {
            Ok(())
        } else {
            Err(PauliError::QubitOutOfRange { qubit: q, n: self.n })
        }
    }

    fn check_len(&self, other: &Self) -> Result<(), PauliError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PauliError::LengthMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Qubit indices carrying a non-identity factor, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.x
            .iter()
            .zip(&self.z)
            .enumerate()
            .flat_map(|(w, (x, z))| BitIter(x | z).map(move |b| w * 64 + b))
    }

    pub fn supports_overlap(&self, other: &Self) -> bool {
        self.x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .any(|((ax, az), (bx, bz))| (ax | az) & (bx | bz) != 0)
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_len(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        parity & 1 == 0
    }

    /// True when the two strings agree up to sign.
    pub fn same_axis(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Matrix product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<PhasedPauli, PauliError> {
        self.check_len(other)?;
        Ok(self.multiply_unchecked(other))
    }

    pub(crate) fn multiply_unchecked(&self, other: &Self) -> PhasedPauli {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for i in 0..self.x.len() {
            let (ax, az, bx, bz) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            let (a_x, a_y, a_z) = (ax & !az, ax & az, !ax & az);
            let (b_x, b_y, b_z) = (bx & !bz, bx & bz, !bx & bz);
            // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
            plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
            minus += ((a_x & b_z) | (a_y & b_x) | (a_z & b_y)).count_ones();
            x.push(ax ^ bx);
            z.push(az ^ bz);
        }
        let signs = 2 * (self.negative as u32 + other.negative as u32);
        let i_power = ((plus + signs + 3 * minus) % 4) as u8;
        PhasedPauli {
            pauli: PauliString {
                n: self.n,
                x,
                z,
                negative: false,
            },
            i_power,
        }
    }

    /// `g† P g` ([`Direction::Pullback`]) or `g P g†` ([`Direction::Pushforward`]).
    pub fn conjugate_by_gate(
        &self,
        gate: CliffordGate,
        direction: Direction,
    ) -> Result<PauliString, PauliError> {
        let mut out = self.clone();
        out.conjugate_in_place(gate, direction)?;
        Ok(out)
    }

    pub fn conjugate_in_place(
        &mut self,
        gate: CliffordGate,
        direction: Direction,
    ) -> Result<(), PauliError> {
        for q in gate.qubits() {
            self.check_qubit(q)?;
        }
        let gate = match direction {
            Direction::Pullback => gate,
            Direction::Pushforward => gate.inverse(),
        };
        match gate {
            CliffordGate::Cx { control, target } => {
                let (cw, cb) = (control / 64, control % 64);
                let (tw, tb) = (target / 64, target % 64);
                let xc = (self.x[cw] >> cb) & 1;
                let zc = (self.z[cw] >> cb) & 1;
                let xt = (self.x[tw] >> tb) & 1;
                let zt = (self.z[tw] >> tb) & 1;
                if xc & zt & (xt ^ zc ^ 1) == 1 {
                    self.negative = !self.negative;
                }
                self.x[tw] ^= xc << tb;
                self.z[cw] ^= zt << cb;
            }
            single => {
                let q = single.qubits().next().unwrap_or(0);
                let (img, flip) = single_qubit_pullback(single, self.get_unchecked(q));
                self.set_unchecked(q, img);
                if flip {
                    self.negative = !self.negative;
                }
            }
        }
        Ok(())
    }

    /// Conjugation of `self` by the Clifford rotation `R_axis(±π/2)`.
    ///
    /// Commuting strings are returned unchanged; anticommuting ones map to
    /// `±i·axis·self`, with the sign set by `positive` and `direction`.
    pub fn conjugate_by_quarter(
        &self,
        axis: &PauliString,
        positive: bool,
        direction: Direction,
    ) -> Result<PauliString, PauliError> {
        self.check_len(axis)?;
        Ok(self.conjugate_by_quarter_unchecked(axis, positive, direction))
    }

    pub(crate) fn conjugate_by_quarter_unchecked(
        &self,
        axis: &PauliString,
        positive: bool,
        direction: Direction,
    ) -> PauliString {
        if self.commutes_unchecked(axis) {
            return self.clone();
        }
        // K = R_C(a), a = ±π/2: K† Q K = i sin(a) C Q and K Q K† = -i sin(a) C Q.
        let prod = axis.multiply_unchecked(self);
        let extra = match (positive, direction) {
            (true, Direction::Pullback) | (false, Direction::Pushforward) => 1,
            (false, Direction::Pullback) | (true, Direction::Pushforward) => 3,
        };
        let k = (prod.i_power + extra) % 4;
        debug_assert!(k % 2 == 0, "anticommuting product must be Hermitian after the i factor");
        let mut out = prod.pauli;
        out.negative = k == 2;
        out
    }

    /// Tensor-product of `self` (low qubits) with `other` (high qubits).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::identity(self.n + other.n);
        for q in 0..self.n {
            out.set_unchecked(q, self.get_unchecked(q));
        }
        for q in 0..other.n {
            out.set_unchecked(self.n + q, other.get_unchecked(q));
        }
        out.negative = self.negative ^ other.negative;
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.n {
            fmt::Write::write_char(f, self.get_unchecked(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.as_bytes().first() {
            Some(b'+') => (false, &s[1..]),
            Some(b'-') => (true, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(PauliError::Empty);
        }
        let paulis = body
            .chars()
            .map(Pauli::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = PauliString::from_paulis(&paulis);
        out.negative = negative;
        Ok(out)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Product result `i^k · P` with `P` carrying a `+1` sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasedPauli {
    pub pauli: PauliString,
    pub i_power: u8,
}

impl PhasedPauli {
    /// Converts to a signed string when the phase is real.
    pub fn to_signed(&self) -> Option<PauliString> {
        match self.i_power {
            0 => Some(self.pauli.clone()),
            2 => Some(self.pauli.negated()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `g† P g`
    Pullback,
    /// `g P g†`
    Pushforward,
}

/// Clifford gates the conjugation tables cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cx { control: usize, target: usize },
}

impl CliffordGate {
    pub fn inverse(self) -> Self {
        match self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    pub fn qubits(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::Sdg(q)
            | CliffordGate::X(q)
            | CliffordGate::Y(q)
            | CliffordGate::Z(q) => (q, None),
            CliffordGate::Cx { control, target } => (control, Some(target)),
        };
        core::iter::once(a).chain(b)
    }
}

/// One entry of a single-qubit pullback table: image Pauli and sign flip.
pub(crate) type TableEntry = (Pauli, bool);

/// `g† P g` for the single-qubit Cliffords, indexed by `[I, X, Y, Z]`.
///
/// Every entry is checked against dense matrices in the oracle tests.
pub(crate) const PULLBACK_H: [TableEntry; 4] = [
    (Pauli::I, false),
    (Pauli::Z, false),
    (Pauli::Y, true),
    (Pauli::X, false),
];
pub(crate) const PULLBACK_S: [TableEntry; 4] = [
    (Pauli::I, false),
    (Pauli::Y, true),
    (Pauli::X, false),
    (Pauli::Z, false),
];
pub(crate) const PULLBACK_SDG: [TableEntry; 4] = [
    (Pauli::I, false),
    (Pauli::Y, false),
    (Pauli::X, true),
    (Pauli::Z, false),
];
pub(crate) const PULLBACK_X: [TableEntry; 4] = [
    (Pauli::I, false),
    (Pauli::X, false),
    (Pauli::Y, true),
    (Pauli::Z, true),
];
pub(crate) const PULLBACK_Y: [TableEntry; 4] = [
    (Pauli::I, false),
    (Pauli::X, true),
    (Pauli::Y, false),
    (Pauli::Z, true),
];
pub(crate) const PULLBACK_Z: [TableEntry; 4] = [
    (Pauli::I, false),
    (Pauli::X, true),
    (Pauli::Y, true),
    (Pauli::Z, false),
];

pub(crate) fn pullback_table(gate: CliffordGate) -> Option<&'static [TableEntry; 4]> {
    match gate {
        CliffordGate::H(_) => Some(&PULLBACK_H),
        CliffordGate::S(_) => Some(&PULLBACK_S),
        CliffordGate::Sdg(_) => Some(&PULLBACK_SDG),
        CliffordGate::X(_) => Some(&PULLBACK_X),
        CliffordGate::Y(_) => Some(&PULLBACK_Y),
        CliffordGate::Z(_) => Some(&PULLBACK_Z),
        CliffordGate::Cx { .. } => None,
    }
}

fn single_qubit_pullback(gate: CliffordGate, p: Pauli) -> TableEntry {
    match pullback_table(gate) {
        Some(table) => table[p.index()],
        None => (p, false),
    }
}

/// Word-parallel application of a single-qubit pullback table to bit-sliced
/// columns: `xs`, `zs` hold one qubit's bits across many strings and `signs`
/// their sign bits.
pub(crate) fn apply_table_sliced(
    table: &[TableEntry; 4],
    xs: &mut [u64],
    zs: &mut [u64],
    signs: &mut [u64],
) {
    let pick = |bit: bool, mask: u64| if bit { mask } else { 0 };
    for i in 0..xs.len() {
        let (x, z) = (xs[i], zs[i]);
        let masks = [0, x & !z, x & z, !x & z];
        let (mut nx, mut nz, mut flip) = (0u64, 0u64, 0u64);
        for t in 1..4 {
            let (img, neg) = table[t];
            let (ix, iz) = img.bits();
            nx |= pick(ix, masks[t]);
            nz |= pick(iz, masks[t]);
            flip |= pick(neg, masks[t]);
        }
        xs[i] = nx;
        zs[i] = nz;
        signs[i] ^= flip;
    }
}

/// Word-parallel CNOT conjugation (self-inverse, so both directions agree).
pub(crate) fn apply_cx_sliced(
    xc: &mut [u64],
    zc: &mut [u64],
    xt: &mut [u64],
    zt: &mut [u64],
    signs: &mut [u64],
) {
    for i in 0..xc.len() {
        signs[i] ^= xc[i] & zt[i] & !(xt[i] ^ zc[i]);
        xt[i] ^= xc[i];
        zc[i] ^= zt[i];
    }
}

/// Rotation angle, with `R_P(θ) = exp(-iθP/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AngleClass {
    /// `π/4`, a T rotation.
    PlusQuarter,
    /// `-π/4`, a T† rotation.
    MinusQuarter,
    /// `π/2`
    PlusHalf,
    /// `-π/2`
    MinusHalf,
    /// `π`
    Pi,
}

impl AngleClass {
    pub fn radians(self) -> f64 {
        use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
        match self {
            AngleClass::PlusQuarter => FRAC_PI_4,
            AngleClass::MinusQuarter => -FRAC_PI_4,
            AngleClass::PlusHalf => FRAC_PI_2,
            AngleClass::MinusHalf => -FRAC_PI_2,
            AngleClass::Pi => PI,
        }
    }

    /// Multiples of `π/4`.
    pub fn eighths(self) -> i32 {
        match self {
            AngleClass::PlusQuarter => 1,
            AngleClass::MinusQuarter => -1,
            AngleClass::PlusHalf => 2,
            AngleClass::MinusHalf => -2,
            AngleClass::Pi => 4,
        }
    }

    /// `R_P(-θ)`; `-π` and `π` coincide up to global phase.
    pub fn negated(self) -> Self {
        match self {
            AngleClass::PlusQuarter => AngleClass::MinusQuarter,
            AngleClass::MinusQuarter => AngleClass::PlusQuarter,
            AngleClass::PlusHalf => AngleClass::MinusHalf,
            AngleClass::MinusHalf => AngleClass::PlusHalf,
            AngleClass::Pi => AngleClass::Pi,
        }
    }

    pub fn is_clifford(self) -> bool {
        !matches!(self, AngleClass::PlusQuarter | AngleClass::MinusQuarter)
    }
}

/// `R_P(θ)` with `P` normalized to a `+1` sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliRotation {
    pauli: PauliString,
    angle: AngleClass,
}

impl PauliRotation {
    /// Folds a negative sign into the angle: `R_{-P}(θ) = R_P(-θ)`.
    pub fn new(pauli: PauliString, angle: AngleClass) -> Self {
        let (pauli, angle) = if pauli.is_negative() {
            (pauli.unsigned(), angle.negated())
        } else {
            (pauli, angle)
        };
        PauliRotation { pauli, angle }
    }

    pub fn pauli(&self) -> &PauliString {
        &self.pauli
    }

    pub fn angle(&self) -> AngleClass {
        self.angle
    }

    pub fn into_parts(self) -> (PauliString, AngleClass) {
        (self.pauli, self.angle)
    }
}

/// `C(P1, P2)` as Clifford rotations, listed in application order.
///
/// `C(P1,P2) = exp(iπ/4 (I-P1)(I-P2))`, which factors into the three
/// mutually commuting rotations `R_P1(π/2) R_P2(π/2) R_{P1P2}(-π/2)` up to a
/// global phase.
pub fn controlled_pauli_rotations(
    p1: &PauliString,
    p2: &PauliString,
) -> Result<Vec<PauliRotation>, PauliError> {
    p1.check_len(p2)?;
    if p1.is_identity() || p2.is_identity() {
        return Err(PauliError::IdentityOperand);
    }
    if p1.supports_overlap(p2) {
        return Err(PauliError::OverlappingSupport);
    }
    let joint = p1
        .multiply_unchecked(p2)
        .to_signed()
        .ok_or(PauliError::OverlappingSupport)?;
    Ok(vec![
        PauliRotation::new(p1.clone(), AngleClass::PlusHalf),
        PauliRotation::new(p2.clone(), AngleClass::PlusHalf),
        PauliRotation::new(joint, AngleClass::MinusHalf),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        let r = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(r.pauli, p("Y"));
        assert_eq!(r.i_power, 3);
        let r = p("X").multiply(&p("X")).unwrap();
        assert!(r.pauli.is_identity());
        assert_eq!(r.i_power, 0);
        let r = p("XZ").multiply(&p("ZX")).unwrap();
        assert_eq!(r.to_signed().unwrap(), p("+YY"));
    }

    #[test]
    fn multiply_length_mismatch() {
        assert_eq!(
            p("X").multiply(&p("XX")),
            Err(PauliError::LengthMismatch { left: 1, right: 2 })
        );
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(!p("XYZ").commutes(&p("ZZX")).unwrap());
        assert!(p("-X").commutes(&p("X")).unwrap());
    }

    #[test]
    fn gate_conjugation_examples() {
        use Direction::*;
        assert_eq!(p("X").conjugate_by_gate(CliffordGate::H(0), Pullback).unwrap(), p("Z"));
        assert_eq!(p("Z").conjugate_by_gate(CliffordGate::H(0), Pullback).unwrap(), p("X"));
        assert_eq!(p("X").conjugate_by_gate(CliffordGate::S(0), Pullback).unwrap(), p("-Y"));
        let cx = CliffordGate::Cx { control: 0, target: 1 };
        for d in [Pullback, Pushforward] {
            assert_eq!(p("XI").conjugate_by_gate(cx, d).unwrap(), p("XX"));
            assert_eq!(p("IZ").conjugate_by_gate(cx, d).unwrap(), p("ZZ"));
        }
        assert_eq!(
            p("X").conjugate_by_gate(CliffordGate::H(3), Pullback),
            Err(PauliError::QubitOutOfRange { qubit: 3, n: 1 })
        );
    }

    #[test]
    fn quarter_conjugation_examples() {
        use Direction::*;
        assert_eq!(p("Z").conjugate_by_quarter(&p("Z"), true, Pushforward).unwrap(), p("Z"));
        // e^{-iπ/4 Z} X e^{iπ/4 Z} = +Y, see the dense check in oracle tests.
        assert_eq!(p("X").conjugate_by_quarter(&p("Z"), true, Pushforward).unwrap(), p("Y"));
        let r = p("ZI").conjugate_by_quarter(&p("XX"), true, Pushforward).unwrap();
        assert!(r.same_axis(&p("YX")));
    }

    #[test]
    fn weight_and_support() {
        let q = p("-XIZY");
        assert_eq!(q.weight(), 3);
        assert_eq!(q.support().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(alloc::format!("{q}"), "-XIZY");
        let mut big = PauliString::identity(130);
        big.set(129, Pauli::Y).unwrap();
        big.set(64, Pauli::X).unwrap();
        assert_eq!(big.support().collect::<Vec<_>>(), vec![64, 129]);
    }

    #[test]
    fn rotation_canonicalizes_sign() {
        let r = PauliRotation::new(p("-ZZ"), AngleClass::PlusQuarter);
        assert_eq!(r.pauli(), &p("+ZZ"));
        assert_eq!(r.angle(), AngleClass::MinusQuarter);
        let r = PauliRotation::new(p("-X"), AngleClass::Pi);
        assert_eq!(r.angle(), AngleClass::Pi);
    }

    #[test]
    fn controlled_pauli_errors() {
        assert_eq!(
            controlled_pauli_rotations(&p("II"), &p("IX")),
            Err(PauliError::IdentityOperand)
        );
        assert_eq!(
            controlled_pauli_rotations(&p("ZI"), &p("XI")),
            Err(PauliError::OverlappingSupport)
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!("".parse::<PauliString>(), Err(PauliError::Empty));
        assert_eq!("+".parse::<PauliString>(), Err(PauliError::Empty));
        assert_eq!("XQ".parse::<PauliString>(), Err(PauliError::InvalidChar('Q')));
    }
}
