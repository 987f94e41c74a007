//! Statevector engine against a dense-matrix oracle: every gate is lifted to
//! a full 2^n x 2^n matrix by explicit Kronecker products and multiplied in.

use cutbench::{gate_unitary, probabilities, simulate, Circuit, Gate, GateKind, Unitary};
use num_complex::Complex64;
use proptest::prelude::*;

type Matrix = Vec<Vec<Complex64>>;

fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
                .collect()
        })
        .collect()
}

/// `a ⊗ b` with `b` on the low index bits.
fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (da, db) = (a.len(), b.len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); da * db]; da * db];
    for (ra, row_a) in a.iter().enumerate() {
        for (ca, &x) in row_a.iter().enumerate() {
            for (rb, row_b) in b.iter().enumerate() {
                for (cb, &y) in row_b.iter().enumerate() {
                    out[ra * db + rb][ca * db + cb] = x * y;
                }
            }
        }
    }
    out
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for r in 0..d {
        for k in 0..d {
            if a[r][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..d {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

fn swap_matrix(n: usize, i: usize, j: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (y, row) in m.iter_mut().enumerate() {
        // swapping is its own inverse, so the source column is y swapped
        let (bi, bj) = ((y >> i) & 1, (y >> j) & 1);
        let x = (y & !(1 << i) & !(1 << j)) | (bj << i) | (bi << j);
        row[x] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Full-register matrix of `g`: the gate acts on qubits 0 (and 1), then
/// permutation matrices move its operands into place.
fn lift(n: usize, g: &Gate) -> Matrix {
    let small: Matrix = match g.kind.unitary() {
        Unitary::One(m) => m.iter().map(|r| r.to_vec()).collect(),
        Unitary::Two(m) => m.iter().map(|r| r.to_vec()).collect(),
    };
    let k = g.qubits().len();
    let base = kron(&identity(1 << (n - k)), &small);
    // route operand slot s to qubit operands[s]
    let mut p = identity(1 << n);
    let mut pos: Vec<usize> = (0..n).collect();
    for (slot, &q) in g.qubits().iter().enumerate() {
        let at = pos.iter().position(|&x| x == q).unwrap();
        if at != slot {
            p = matmul(&swap_matrix(n, slot, at), &p);
            pos.swap(slot, at);
        }
    }
    // p maps logical layout to the gate's layout; conjugate
    let pt: Matrix = (0..p.len()).map(|r| (0..p.len()).map(|c| p[c][r]).collect()).collect();
    matmul(&pt, &matmul(&base, &p))
}

fn oracle_state(c: &Circuit) -> Vec<Complex64> {
    let n = c.width();
    let mut u = identity(1 << n);
    for g in c.gates() {
        u = matmul(&lift(n, g), &u);
    }
    u.iter().map(|row| row[0]).collect()
}

fn arb_kind() -> impl Strategy<Value = GateKind> {
    let a = -4.0f64..4.0;
    prop_oneof![
        Just(GateKind::H),
        Just(GateKind::X),
        Just(GateKind::Y),
        Just(GateKind::Z),
        Just(GateKind::S),
        Just(GateKind::Sdg),
        Just(GateKind::T),
        Just(GateKind::Tdg),
        a.clone().prop_map(GateKind::RX),
        a.clone().prop_map(GateKind::RY),
        a.clone().prop_map(GateKind::RZ),
        a.clone().prop_map(GateKind::U1),
        (a.clone(), a.clone(), a).prop_map(|(x, y, z)| GateKind::U3(x, y, z)),
        Just(GateKind::CX),
        Just(GateKind::CZ),
        Just(GateKind::Swap),
    ]
}

fn arb_circuit(max_n: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((arb_kind(), 0..n, 1..n), 0..25).prop_map(move |gs| {
            let gates = gs
                .into_iter()
                .map(|(k, a, off)| {
                    if k.arity() == 1 {
                        Gate::one(k, a)
                    } else {
                        Gate::two(k, a, (a + off) % n)
                    }
                })
                .collect();
            Circuit::from_gates(n, gates).unwrap()
        })
    })
}

#[test]
fn two_qubit_matrices_use_first_operand_as_low_bit() {
    // CX with control first: |b0=1, b1=0> (index 1) -> |11> (index 3)
    let Unitary::Two(m) = gate_unitary(GateKind::CX) else { panic!() };
    assert_eq!(m[3][1], Complex64::new(1.0, 0.0));
    assert_eq!(m[1][1], Complex64::new(0.0, 0.0));
}

#[test]
fn reversed_cx_operands() {
    let mut c = Circuit::new(3);
    c.x(2).cx(2, 0);
    let p = probabilities(&simulate(&c).unwrap());
    assert!((p.values()[0b101] - 1.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_dense_oracle(c in arb_circuit(5)) {
        let want = oracle_state(&c);
        let got = simulate(&c).unwrap();
        for (a, b) in got.amplitudes().iter().zip(&want) {
            prop_assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
        prop_assert!((got.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
