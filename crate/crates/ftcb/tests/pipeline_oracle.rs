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

use ftcb::generate::{generate, GenerateParams};
use ftcb_core::circuit::{normalize_to_clifford_rz, Gate, GateCircuit};
use ftcb_core::oracle::pbc_equivalence;
use ftcb_core::pauli::{CliffordGate, Direction, Pauli, PauliString};
use ftcb_core::pbc::{compile_to_pbc, optimize_pbc};
use ftcb_core::synthesis::{SkConfig, Synthesizer};

fn synthesized(family: &str, params: GenerateParams, depth: usize) -> GateCircuit {
    let (c, _) = generate(family, &params).unwrap();
    let mut s = Synthesizer::new(SkConfig { depth, base_length: 10 });
    s.synthesize_circuit(&normalize_to_clifford_rz(&c)).unwrap().0
}

#[test]
fn synthesized_trotter_circuits_compile_exactly() {
    let small = GenerateParams { sites: Some(2), lx: Some(2), ly: Some(2), steps: 2, dt: 0.4, ..Default::default() };
    for family in ["ising_1d", "heisenberg_1d", "heisenberg_2d", "fermi_hubbard_1d"] {
        let c = synthesized(family, small.clone(), 2);
        assert!(c.t_count() > 0, "{family}");
        let raw = compile_to_pbc(&c).unwrap();
        let (opt, _) = optimize_pbc(&raw).unwrap();
        for p in [&raw, &opt] {
            let f = pbc_equivalence(&c, p).unwrap();
            assert!(f >= 1.0 - 1e-9, "{family}: {f}");
        }
    }
}

fn clifford(g: &Gate) -> Option<CliffordGate> {
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

/// Rotation axis of the `k`-th T gate by direct pullback through every
/// earlier Clifford, last one first.
fn naive_axis(c: &GateCircuit, k: usize) -> (PauliString, bool) {
    let ops = c.ops();
    let pos = ops.iter().enumerate().filter(|(_, g)| g.kind().is_t_like()).nth(k).unwrap().0;
    let q = ops[pos].qubits().next().unwrap();
    let mut p = PauliString::single(c.num_qubits(), q, Pauli::Z).unwrap();
    for g in ops[..pos].iter().rev() {
        if let Some(cg) = clifford(g) {
            p.conjugate_in_place(cg, Direction::Pullback).unwrap();
        }
    }
    (p, matches!(ops[pos], Gate::Tdg(_)))
}

#[test]
fn large_circuit_rotations_match_direct_pullback() {
    let params = GenerateParams { sites: Some(100), steps: 3, ..Default::default() };
    let c = synthesized("heisenberg_1d", params, 2);
    let pbc = compile_to_pbc(&c).unwrap();
    let rots = pbc.rotations();
    assert_eq!(rots.len(), c.t_count());
    let step = (rots.len() / 40).max(1);
    for k in (0..rots.len()).step_by(step) {
        let (axis, dagger) = naive_axis(&c, k);
        let flip = axis.is_negative() ^ dagger;
        let want = ftcb_core::pauli::PauliRotation::new(
            axis.unsigned(),
            if flip { ftcb_core::pauli::AngleClass::MinusQuarter } else { ftcb_core::pauli::AngleClass::PlusQuarter },
        );
        assert_eq!(rots[k], want, "rotation {k}");
    }
}
