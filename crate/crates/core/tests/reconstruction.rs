//! Evaluate, attribute and reconstruct against direct simulation and
//! hand-built term sums.

use cutbench::cutter::{find_cuts, plan_with_cuts, CutPlan, CutPoint, SubcircuitSpec};
use cutbench::evaluator::{
    attribute_all, attribute_shots, enumerate_variants, evaluate_all, AttributedSet,
    InitState, MeasureOp, VariantAssignment,
};
use cutbench::reconstruct::{fragment_term, reconstruct, total_variation_distance};
use cutbench::{dag_edges, probabilities, simulate, Circuit, GateKind, MeasureBasis, ProbVector};
use proptest::prelude::*;

fn direct(c: &Circuit) -> ProbVector {
    probabilities(&simulate(c).unwrap())
}

fn run(plan: &CutPlan, workers: usize) -> ProbVector {
    let raw = evaluate_all(&plan.subcircuits, workers).unwrap();
    let att = attribute_all(&plan.subcircuits, &raw).unwrap();
    reconstruct(plan, &att).unwrap()
}

fn attributed(plan: &CutPlan) -> AttributedSet {
    let raw = evaluate_all(&plan.subcircuits, 2).unwrap();
    attribute_all(&plan.subcircuits, &raw).unwrap()
}

/// Five-qubit cZ ladder with a single 3 + 3 split on q2.
fn five_qubit() -> Circuit {
    let mut c = Circuit::new(5);
    for q in 0..5 {
        c.h(q);
    }
    c.cz(0, 1).cz(1, 2);
    c.apply1(GateKind::T, 2);
    c.cz(2, 3).cz(3, 4);
    c.apply1(GateKind::RX(0.7), 0);
    c.apply1(GateKind::RY(1.1), 3);
    c.apply1(GateKind::T, 4);
    c
}

#[test]
fn five_qubit_structure() {
    let c = five_qubit();
    let plan = find_cuts(&c, 3, 5, 3).unwrap();
    assert_eq!(plan.num_cuts(), 1);
    assert_eq!(enumerate_variants(&plan.subcircuits[0]).len(), 3);
    assert_eq!(enumerate_variants(&plan.subcircuits[1]).len(), 4);
    let raw = evaluate_all(&plan.subcircuits, 0).unwrap();
    assert_eq!(raw.len(), 7);
    let p = run(&plan, 0);
    assert!(total_variation_distance(&p, &direct(&c)).unwrap() <= 1e-9);
}

#[test]
fn first_term_of_each_fragment() {
    let c = five_qubit();
    let plan = find_cuts(&c, 3, 5, 3).unwrap();
    let raw = evaluate_all(&plan.subcircuits, 1).unwrap();
    let att = attribute_all(&plan.subcircuits, &raw).unwrap();
    let up = &plan.subcircuits[0];
    assert_eq!(up.upstream_qubits, vec![2]);
    let comp = &raw[&(
        0,
        VariantAssignment {
            upstream: vec![MeasureBasis::Comp],
            downstream: vec![],
        },
    )];
    let term = fragment_term(up, 0, &[1], &att).unwrap();
    // outcome |01> of the effective qubits: q0 = 0, q1 = 1
    let x = 0b10;
    let (p0, p1) = (comp.values()[x], comp.values()[x | 0b100]);
    let want = (p0 + p1) + (p0 - p1);
    assert!((term[x] - want).abs() < 1e-15);

    let down = &plan.subcircuits[1];
    let zero = &raw[&(
        1,
        VariantAssignment {
            upstream: vec![],
            downstream: vec![InitState::Zero],
        },
    )];
    let term = fragment_term(down, 1, &[1], &att).unwrap();
    assert_eq!(term, zero.values().to_vec());
}

#[test]
fn x_attribution_matches_difference() {
    let spec = SubcircuitSpec {
        fragment: Circuit::new(3),
        upstream_cuts: vec![0],
        upstream_qubits: vec![2],
        downstream_cuts: vec![],
        downstream_qubits: vec![],
        effective_qubits: vec![0, 1],
        output_map: vec![0, 1],
        source_gates: vec![],
    };
    let a = VariantAssignment {
        upstream: vec![MeasureBasis::X],
        downstream: vec![],
    };
    let raw = ProbVector::new(vec![0.05, 0.1, 0.15, 0.2, 0.1, 0.1, 0.2, 0.1]).unwrap();
    let out = attribute_shots(&spec, 0, &a, &raw).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].ops, vec![MeasureOp::X]);
    // |01> with the cut qubit last: p(010|X) - p(011|X)
    assert!((out[0].values[0b10] - (0.15 - 0.2)).abs() < 1e-15);

    let uniform = ProbVector::new(vec![0.125; 8]).unwrap();
    let out = attribute_shots(&spec, 0, &a, &uniform).unwrap();
    assert!(out[0].values.iter().all(|&v| v == 0.0));
}

#[test]
fn no_upstream_cut_leaves_raw_unchanged() {
    let spec = SubcircuitSpec {
        fragment: Circuit::new(2),
        upstream_cuts: vec![],
        upstream_qubits: vec![],
        downstream_cuts: vec![0],
        downstream_qubits: vec![1],
        effective_qubits: vec![0, 1],
        output_map: vec![0, 1],
        source_gates: vec![],
    };
    let a = VariantAssignment {
        upstream: vec![],
        downstream: vec![InitState::Plus],
    };
    let raw = ProbVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let out = attribute_shots(&spec, 0, &a, &raw).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].values, raw.values().to_vec());
}

#[test]
fn ghz3_single_cut() {
    let mut c = Circuit::new(3);
    c.h(0).cx(0, 1).cx(1, 2);
    let edge = dag_edges(&c).into_iter().find(|e| e.wire == 1).unwrap();
    let plan = plan_with_cuts(&c, &[CutPoint::new(edge)]).unwrap();
    assert_eq!(plan.subcircuits.len(), 2);
    let p = run(&plan, 0);
    let mut want = vec![0.0; 8];
    want[0] = 0.5;
    want[7] = 0.5;
    let want = ProbVector::new(want).unwrap();
    assert!(total_variation_distance(&p, &want).unwrap() <= 1e-9);
}

#[test]
fn chain_of_three_fragments() {
    // wire 1 links A = cx(0,1), B = cx(1,2), C = cx(1,3)
    let mut c = Circuit::new(4);
    c.apply1(GateKind::RY(0.9), 0);
    c.apply1(GateKind::RX(0.4), 1);
    c.cx(0, 1);
    c.apply1(GateKind::T, 1);
    c.apply1(GateKind::RY(1.3), 2);
    c.cx(1, 2);
    c.apply1(GateKind::RX(0.6), 1);
    c.cx(1, 3);
    c.apply1(GateKind::H, 3);
    let wire1: Vec<CutPoint> = dag_edges(&c)
        .into_iter()
        .filter(|e| e.wire == 1 && c.gates()[e.from_gate].kind == GateKind::CX)
        .map(CutPoint::new)
        .collect();
    assert_eq!(wire1.len(), 2);
    let plan = plan_with_cuts(&c, &wire1).unwrap();
    assert_eq!(plan.subcircuits.len(), 3);
    let middle: Vec<&SubcircuitSpec> = plan
        .subcircuits
        .iter()
        .filter(|s| s.upstream_cuts.len() == 1 && s.downstream_cuts.len() == 1)
        .collect();
    assert_eq!(middle.len(), 1);
    assert_eq!(middle[0].num_effective(), middle[0].width() - 1);
    assert_eq!(plan.total_variants(), 3 + 12 + 4);
    let p = run(&plan, 3);
    assert!(total_variation_distance(&p, &direct(&c)).unwrap() <= 1e-10);
}

/// `a ⊗ b` with `b` on the low bits.
fn kron(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

#[test]
fn single_cut_is_half_sum_of_four_products() {
    let c = five_qubit();
    let plan = find_cuts(&c, 3, 5, 3).unwrap();
    let att = attributed(&plan);
    let (up, down) = (&plan.subcircuits[0], &plan.subcircuits[1]);
    let mut sum = vec![0.0; 32];
    for i in 1..=4u8 {
        let a = fragment_term(up, 0, &[i], &att).unwrap();
        let b = fragment_term(down, 1, &[i], &att).unwrap();
        for (s, v) in sum.iter_mut().zip(kron(&b, &a)) {
            *s += 0.5 * v;
        }
    }
    let order: Vec<usize> = up.output_map.iter().chain(&down.output_map).copied().collect();
    let mut want = vec![0.0; 32];
    for (x, v) in sum.into_iter().enumerate() {
        let y: usize = order.iter().enumerate().map(|(bit, &q)| ((x >> bit) & 1) << q).sum();
        want[y] = v;
    }
    let got = run(&plan, 2);
    for (g, w) in got.values().iter().zip(&want) {
        assert!((g - w).abs() < 1e-14);
    }
}

#[test]
fn disconnected_halves_reproduce_marginals() {
    // {0, 2} and {1, 3} never interact
    let mut c = Circuit::new(4);
    c.apply1(GateKind::RY(0.8), 0).cx(0, 2).apply1(GateKind::RX(0.3), 2);
    c.apply1(GateKind::RY(1.9), 3).cx(3, 1).apply1(GateKind::T, 1).h(1);
    let plan = find_cuts(&c, 2, 2, 0).unwrap();
    assert_eq!(plan.num_cuts(), 0);
    assert_eq!(plan.subcircuits.len(), 2);
    let p = run(&plan, 1);
    let first = &plan.subcircuits[0];
    let alone = direct(&first.fragment);
    let mut marginal = [0.0; 4];
    for (x, v) in p.values().iter().enumerate() {
        let y: usize = first
            .output_map
            .iter()
            .enumerate()
            .map(|(k, &q)| ((x >> q) & 1) << first.effective_qubits[k])
            .sum();
        marginal[y] += v;
    }
    for (m, a) in marginal.iter().zip(alone.values()) {
        assert!((m - a).abs() < 1e-14);
    }
    assert!(p.max_abs_diff(&direct(&c)) < 1e-14);
}

#[test]
fn worker_count_does_not_change_bits() {
    let c = five_qubit();
    let plan = find_cuts(&c, 3, 5, 3).unwrap();
    let one = evaluate_all(&plan.subcircuits, 1).unwrap();
    let eight = evaluate_all(&plan.subcircuits, 8).unwrap();
    assert_eq!(one, eight);
    assert_eq!(run(&plan, 1), run(&plan, 8));
}

#[test]
fn tvd_examples() {
    let p = ProbVector::new(vec![0.5, 0.5]).unwrap();
    let q = ProbVector::new(vec![0.75, 0.25]).unwrap();
    assert!((total_variation_distance(&p, &q).unwrap() - 0.25).abs() < 1e-15);
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (3usize..=6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 1..n, 0u8..4, -3.0f64..3.0), 3..14).prop_map(move |gs| {
            let mut c = Circuit::new(n);
            for (a, off, kind, angle) in gs {
                let b = (a + off) % n;
                match kind {
                    0 => c.cx(a, b),
                    1 => c.cz(a, b),
                    2 => c.apply1(GateKind::RY(angle), a),
                    _ => c.apply1(GateKind::U3(angle, 0.3, -angle), b),
                };
            }
            c
        })
    })
}

fn arb_raw(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0f64..1.0, len).prop_map(|v| {
        let s: f64 = v.iter().sum::<f64>().max(1e-9);
        v.into_iter().map(|x| x / s).collect()
    })
}

fn two_cut_spec() -> SubcircuitSpec {
    SubcircuitSpec {
        fragment: Circuit::new(4),
        upstream_cuts: vec![0, 1],
        upstream_qubits: vec![1, 3],
        downstream_cuts: vec![],
        downstream_qubits: vec![],
        effective_qubits: vec![0, 2],
        output_map: vec![0, 2],
        source_gates: vec![],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cut_path_matches_direct(c in arb_circuit(), shrink in 1usize..3) {
        let max_width = (c.width() - shrink).max(2);
        if let Ok(plan) = find_cuts(&c, max_width, 5, 3) {
            let p = run(&plan, 0);
            let want = direct(&c);
            prop_assert!(total_variation_distance(&p, &want).unwrap() <= 1e-9);
            prop_assert!((p.sum() - 1.0).abs() <= 1e-9);
            prop_assert!(p.values().iter().all(|&v| v >= -1e-9));
        }
    }

    #[test]
    fn attribution_is_linear(
        r1 in arb_raw(16),
        r2 in arb_raw(16),
        lambda in 0.0f64..1.0,
        b0 in 0usize..3,
        b1 in 0usize..3,
    ) {
        let spec = two_cut_spec();
        let a = VariantAssignment {
            upstream: vec![MeasureBasis::ALL[b0], MeasureBasis::ALL[b1]],
            downstream: vec![],
        };
        let mix: Vec<f64> = r1.iter().zip(&r2).map(|(x, y)| lambda * x + (1.0 - lambda) * y).collect();
        let p1 = ProbVector::new(r1).unwrap();
        let p2 = ProbVector::new(r2).unwrap();
        let pm = ProbVector::new(mix).unwrap();
        let (o1, o2, om) = (
            attribute_shots(&spec, 0, &a, &p1).unwrap(),
            attribute_shots(&spec, 0, &a, &p2).unwrap(),
            attribute_shots(&spec, 0, &a, &pm).unwrap(),
        );
        for ((x, y), z) in o1.iter().zip(&o2).zip(&om) {
            prop_assert_eq!(&x.ops, &z.ops);
            for ((u, v), w) in x.values.iter().zip(&y.values).zip(&z.values) {
                prop_assert!((lambda * u + (1.0 - lambda) * v - w).abs() < 1e-12);
            }
            prop_assert!(z.values.iter().sum::<f64>().abs() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn identity_combination_is_a_marginal(r in arb_raw(16)) {
        let spec = two_cut_spec();
        let a = VariantAssignment {
            upstream: vec![MeasureBasis::Comp, MeasureBasis::Comp],
            downstream: vec![],
        };
        let raw = ProbVector::new(r).unwrap();
        let out = attribute_shots(&spec, 0, &a, &raw).unwrap();
        prop_assert_eq!(out.len(), 4);
        let ii = out.iter().find(|d| d.ops == vec![MeasureOp::I, MeasureOp::I]).unwrap();
        prop_assert!(ii.values.iter().all(|&v| v >= 0.0));
        prop_assert!((ii.values.iter().sum::<f64>() - raw.sum()).abs() < 1e-12);
    }
}
