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

use ftcb_core::circuit::GateCircuit;
use ftcb_core::generators::{
    jordan_wigner, pauli_rotation_gates, pauli_terms, trotterize, HamiltonianTermList, LatticeSpec,
    ModelKind, ModelParams, TrotterConfig,
};
use ftcb_core::oracle::{
    circuit_unitary, evolution_operator, hamiltonian_matrix, pauli_exponential, pauli_matrix,
    projective_overlap, DenseMatrix,
};
use ftcb_core::pauli::{Pauli, PauliString};
use num_complex::Complex64;

/// `c_j = Z⊗…⊗Z ⊗ |0⟩⟨1| ⊗ I…`, with `|1⟩` an occupied mode.
fn annihilation(j: usize, n: usize) -> DenseMatrix {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = DenseMatrix::identity(1);
    for k in 0..n {
        let f = if k < j {
            DenseMatrix::from_rows(2, vec![one, zero, zero, -one])
        } else if k == j {
            DenseMatrix::from_rows(2, vec![zero, one, zero, zero])
        } else {
            DenseMatrix::identity(2)
        };
        m = m.kron(&f);
    }
    m
}

#[test]
fn mapped_modes_satisfy_anticommutation() {
    let n = 3;
    for p in 0..n {
        for q in 0..n {
            let (cp, cq) = (annihilation(p, n), annihilation(q, n));
            let anti = cp.mul(&cq.adjoint()).add(&cq.adjoint().mul(&cp));
            let expect = if p == q { DenseMatrix::identity(8) } else { DenseMatrix::zeros(8) };
            assert!(anti.frobenius_distance(&expect) < 1e-12);
            let cc = cp.mul(&cq).add(&cq.mul(&cp));
            assert!(cc.frobenius_distance(&DenseMatrix::zeros(8)) < 1e-12);
        }
    }
}

#[test]
fn hopping_terms_match_fermionic_operators() {
    let n = 4;
    for (p, q) in [(0, 1), (0, 3), (1, 3), (2, 0)] {
        let (cp, cq) = (annihilation(p, n), annihilation(q, n));
        let hop = cp.adjoint().mul(&cq).add(&cq.adjoint().mul(&cp));
        let mapped = hamiltonian_matrix(&jordan_wigner(p, q, n).unwrap().terms, n).unwrap();
        assert!(hop.frobenius_distance(&mapped) < 1e-12, "({p}, {q})");
    }
    // Two-site Fermi-Hubbard with U: -t Σ hopping + U n↑n↓, up to a constant.
    let params = ModelParams { u: 2.0, ..ModelParams::default() };
    let h = pauli_terms(ModelKind::FermiHubbard1d, &LatticeSpec::chain(2, true), &params).unwrap();
    let mut exact = DenseMatrix::zeros(16);
    for (a, b) in [(0, 1), (2, 3)] {
        let (ca, cb) = (annihilation(a, n), annihilation(b, n));
        let hop = ca.adjoint().mul(&cb).add(&cb.adjoint().mul(&ca));
        exact = exact.add(&hop.scale(Complex64::new(-1.0, 0.0)));
    }
    for site in 0..2 {
        let up = annihilation(site, n);
        let down = annihilation(site + 2, n);
        let nn = up.adjoint().mul(&up).mul(&down.adjoint().mul(&down));
        exact = exact.add(&nn.scale(Complex64::new(2.0, 0.0)));
    }
    let shifted = hamiltonian_matrix(&h.terms, n)
        .unwrap()
        .add(&DenseMatrix::identity(16).scale(Complex64::new(2.0 * 2.0 / 4.0, 0.0)));
    assert!(exact.frobenius_distance(&shifted) < 1e-12);
}

#[test]
fn spin_models_match_spin_operators() {
    // Ising: J Sz Sz - h Sz on an open 3-chain with S = σ/2.
    let params = ModelParams::default();
    let h = pauli_terms(ModelKind::Ising1d, &LatticeSpec::chain(3, false), &params).unwrap();
    let sz = |q: usize| {
        pauli_matrix(&PauliString::single(3, q, Pauli::Z).unwrap())
            .unwrap()
            .scale(Complex64::new(0.5, 0.0))
    };
    let mut exact = DenseMatrix::zeros(8);
    for (i, j) in [(0, 1), (1, 2)] {
        exact = exact.add(&sz(i).mul(&sz(j)).scale(Complex64::new(params.j, 0.0)));
    }
    for i in 0..3 {
        exact = exact.add(&sz(i).scale(Complex64::new(-params.h, 0.0)));
    }
    assert!(exact.frobenius_distance(&hamiltonian_matrix(&h.terms, 3).unwrap()) < 1e-12);
}

#[test]
fn rotation_gadget_matches_exponential() {
    for s in ["X", "Y", "Z", "XY", "-YZ", "ZIY", "XZY", "IYI"] {
        let p: PauliString = s.parse().unwrap();
        let n = p.num_qubits();
        let mut ops = Vec::new();
        pauli_rotation_gates(&p, 0.37, &mut ops);
        let u = circuit_unitary(&GateCircuit::from_ops(n, 0, ops).unwrap()).unwrap();
        let f = projective_overlap(&u, &pauli_exponential(&p, 0.37).unwrap());
        assert!(f > 1.0 - 1e-12, "{s}: {f}");
    }
}

#[test]
fn commuting_terms_trotterize_exactly() {
    let mut h = HamiltonianTermList::new(3);
    h.push(&[(0, Pauli::Z), (1, Pauli::Z)], 0.7);
    h.push(&[(1, Pauli::Z), (2, Pauli::Z)], -0.4);
    h.push(&[(0, Pauli::Z)], 0.3);
    h.push(&[(0, Pauli::X), (1, Pauli::X), (2, Pauli::X)], 0.0);
    let dt = 0.05;
    let c = trotterize(&h, &TrotterConfig { steps: 1, dt });
    let exact = evolution_operator(&hamiltonian_matrix(&h.terms, 3).unwrap(), dt);
    assert!(projective_overlap(&circuit_unitary(&c).unwrap(), &exact) >= 1.0 - 1e-10);
}

#[test]
fn heisenberg_trotter_error_is_second_order() {
    let h = pauli_terms(ModelKind::Heisenberg1d, &LatticeSpec::chain(3, false), &ModelParams::default())
        .unwrap();
    let m = hamiltonian_matrix(&h.terms, 3).unwrap();
    let mut errs = Vec::new();
    let dts = [0.2, 0.1, 0.05, 0.025];
    for &dt in &dts {
        let c = trotterize(&h, &TrotterConfig { steps: 1, dt });
        let u = circuit_unitary(&c).unwrap();
        errs.push((1.0 - projective_overlap(&u, &evolution_operator(&m, dt))).max(0.0).sqrt());
    }
    let slope = fitted_slope(&dts, &errs);
    assert!(slope >= 1.9, "slope {slope}, errors {errs:?}");
}

fn fitted_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}
