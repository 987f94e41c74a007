//! Helpers shared by integration tests.

#![allow(dead_code)]

use cutbench::block::blocking_transpile;
use cutbench::{Circuit, Gate, GateKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random circuit over a mixed gate set, about `4n` gates.
pub fn random_circuit(n: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(n);
    for _ in 0..4 * n {
        let a = rng.gen_range(0..n);
        let angle = rng.gen_range(-3.2..3.2);
        let kind = match rng.gen_range(0..10) {
            0 => GateKind::H,
            1 => GateKind::T,
            2 => GateKind::S,
            3 => GateKind::RX(angle),
            4 => GateKind::RY(angle),
            5 => GateKind::U3(angle, 0.3 * angle, -angle),
            6 => GateKind::CZ,
            7 => GateKind::Swap,
            _ => GateKind::CX,
        };
        if kind.arity() == 1 {
            c.push(Gate::one(kind, a));
        } else {
            let b = (a + rng.gen_range(1..n)) % n;
            c.push(Gate::two(kind, a, b));
        }
    }
    c
}

/// Chunk transfers predicted by replaying the transpiled gate list: a swap
/// whose high operand addresses a bit above the per-space chunk index moves
/// every chunk once.
pub fn replay_transfers(c: &Circuit, nc: usize, spaces: usize) -> (u64, u64) {
    let n = c.width();
    let t = blocking_transpile(c, nc).unwrap();
    let chunks = 1u64 << (n - nc);
    let local_bits = (chunks / spaces as u64).trailing_zeros() as usize;
    let mut transfers = 0u64;
    for g in t.circuit.gates() {
        if let Some(&h) = g.qubits().iter().find(|&&q| q >= nc) {
            if h - nc >= local_bits {
                transfers += chunks;
            }
        }
    }
    (transfers, transfers * 16 * (1u64 << nc))
}
