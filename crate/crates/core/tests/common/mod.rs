#![allow(dead_code)]

use ftcb_core::circuit::{Gate, GateCircuit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn two(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Random circuit over `{cx, h, s, t, tdg}`.
pub fn random_clifford_t(rng: &mut ChaCha8Rng, n: usize, len: usize) -> GateCircuit {
    let mut ops = Vec::with_capacity(len);
    for _ in 0..len {
        let q = rng.random_range(0..n);
        let choice = if n > 1 { rng.random_range(0..5) } else { rng.random_range(0..4) };
        ops.push(match choice {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::T(q),
            3 => Gate::Tdg(q),
            _ => {
                let (a, b) = two(rng, n);
                Gate::Cx(a, b)
            }
        });
    }
    GateCircuit::from_ops(n, 0, ops).unwrap()
}

/// Random circuit over every unitary gate kind.
pub fn random_any(rng: &mut ChaCha8Rng, n: usize, len: usize) -> GateCircuit {
    assert!(n >= 3);
    let mut ops = Vec::with_capacity(len);
    for _ in 0..len {
        let q = rng.random_range(0..n);
        let a = rng.random_range(-3.2..3.2);
        let b = rng.random_range(-3.2..3.2);
        let c = rng.random_range(-3.2..3.2);
        let (x, y) = two(rng, n);
        let z = (0..n).find(|&k| k != x && k != y).unwrap();
        ops.push(match rng.random_range(0..20) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::Sdg(q),
            3 => Gate::X(q),
            4 => Gate::Y(q),
            5 => Gate::Z(q),
            6 => Gate::T(q),
            7 => Gate::Tdg(q),
            8 => Gate::Cx(x, y),
            9 => Gate::Cz(x, y),
            10 => Gate::Swap(x, y),
            11 => Gate::Ccx(x, y, z),
            12 => Gate::Rz(q, a),
            13 => Gate::Rx(q, a),
            14 => Gate::Ry(q, a),
            15 => Gate::U1(q, a),
            16 => Gate::U2(q, a, b),
            17 => Gate::U3(q, a, b, c),
            18 => Gate::CPhase(x, y, a),
            _ => Gate::Barrier(vec![x, y]),
        });
    }
    GateCircuit::from_ops(n, 0, ops).unwrap()
}
