//! Circuit intermediate representation shared by every simulation path.
//!
//! A [`Circuit`] is an ordered list of unitary gates over `width` qubits.
//! Qubit 0 is the least-significant bit of a basis-state index. There are
//! no measurement or classical operations: probabilities are always read
//! from the final state.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gate kinds with bound parameters (radians).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    RX(f64),
    RY(f64),
    RZ(f64),
    U1(f64),
    U3(f64, f64, f64),
    CX,
    CZ,
    Swap,
}

/// A 2x2 or 4x4 gate matrix, row-major.
///
/// For two-qubit matrices the basis index is `b0 + 2 * b1`, where `b0` is the
/// bit of the gate's first operand and `b1` the bit of its second.
#[derive(Clone, Debug, PartialEq)]
pub enum Unitary {
    One([[Complex64; 2]; 2]),
    Two([[Complex64; 4]; 4]),
}

impl Unitary {
    pub fn dim(&self) -> usize {
        match self {
            Unitary::One(_) => 2,
            Unitary::Two(_) => 4,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        match self {
            Unitary::One(m) => m[row][col],
            Unitary::Two(m) => m[row][col],
        }
    }
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::CX | GateKind::CZ | GateKind::Swap => 2,
            _ => 1,
        }
    }

    /// Lowercase name used by the text format.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::RX(_) => "rx",
            GateKind::RY(_) => "ry",
            GateKind::RZ(_) => "rz",
            GateKind::U1(_) => "u1",
            GateKind::U3(..) => "u3",
            GateKind::CX => "cx",
            GateKind::CZ => "cz",
            GateKind::Swap => "swap",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            GateKind::RX(t) | GateKind::RY(t) | GateKind::RZ(t) | GateKind::U1(t) => vec![t],
            GateKind::U3(t, p, l) => vec![t, p, l],
            _ => Vec::new(),
        }
    }

    /// Builds a kind from its text name and parameter list.
    pub fn from_name(name: &str, params: &[f64]) -> Option<GateKind> {
        let kind = match (name, params) {
            ("h", []) => GateKind::H,
            ("x", []) => GateKind::X,
            ("y", []) => GateKind::Y,
            ("z", []) => GateKind::Z,
            ("s", []) => GateKind::S,
            ("sdg", []) => GateKind::Sdg,
            ("t", []) => GateKind::T,
            ("tdg", []) => GateKind::Tdg,
            ("rx", [t]) => GateKind::RX(*t),
            ("ry", [t]) => GateKind::RY(*t),
            ("rz", [t]) => GateKind::RZ(*t),
            ("u1", [l]) => GateKind::U1(*l),
            ("u3", [t, p, l]) => GateKind::U3(*t, *p, *l),
            ("cx", []) => GateKind::CX,
            ("cz", []) => GateKind::CZ,
            ("swap", []) => GateKind::Swap,
            _ => return None,
        };
        Some(kind)
    }

    pub fn is_known_name(name: &str) -> bool {
        matches!(
            name,
            "h" | "x"
                | "y"
                | "z"
                | "s"
                | "sdg"
                | "t"
                | "tdg"
                | "rx"
                | "ry"
                | "rz"
                | "u1"
                | "u3"
                | "cx"
                | "cz"
                | "swap"
        )
    }

    /// The gate's unitary matrix.
    ///
    /// Phase conventions: `RZ(t) = diag(e^{-it/2}, e^{it/2})`,
    /// `U1(l) = diag(1, e^{il})` and `U3(t, p, l)` is the usual Euler form
    /// `[[cos, -e^{il} sin], [e^{ip} sin, e^{i(p+l)} cos]]` of `t/2`.
    pub fn unitary(&self) -> Unitary {
        let zero = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        match *self {
            GateKind::H => {
                let h = c(FRAC_1_SQRT_2, 0.0);
                Unitary::One([[h, h], [h, -h]])
            }
            GateKind::X => Unitary::One([[zero, one], [one, zero]]),
            GateKind::Y => Unitary::One([[zero, c(0.0, -1.0)], [c(0.0, 1.0), zero]]),
            GateKind::Z => Unitary::One([[one, zero], [zero, -one]]),
            GateKind::S => Unitary::One([[one, zero], [zero, c(0.0, 1.0)]]),
            GateKind::Sdg => Unitary::One([[one, zero], [zero, c(0.0, -1.0)]]),
            GateKind::T => Unitary::One([[one, zero], [zero, Complex64::from_polar(1.0, FRAC_PI_4)]]),
            GateKind::Tdg => {
                Unitary::One([[one, zero], [zero, Complex64::from_polar(1.0, -FRAC_PI_4)]])
            }
            GateKind::RX(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                Unitary::One([[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]])
            }
            GateKind::RY(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                Unitary::One([[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]])
            }
            GateKind::RZ(t) => Unitary::One([
                [Complex64::from_polar(1.0, -t / 2.0), zero],
                [zero, Complex64::from_polar(1.0, t / 2.0)],
            ]),
            GateKind::U1(l) => Unitary::One([[one, zero], [zero, Complex64::from_polar(1.0, l)]]),
            GateKind::U3(t, p, l) => {
                let (s, co) = (t / 2.0).sin_cos();
                Unitary::One([
                    [c(co, 0.0), -Complex64::from_polar(s, l)],
                    [Complex64::from_polar(s, p), Complex64::from_polar(co, p + l)],
                ])
            }
            GateKind::CX => {
                // control = first operand (bit 0), target = second (bit 1)
                let mut m = [[zero; 4]; 4];
                m[0][0] = one;
                m[2][2] = one;
                m[1][3] = one;
                m[3][1] = one;
                Unitary::Two(m)
            }
            GateKind::CZ => {
                let mut m = [[zero; 4]; 4];
                m[0][0] = one;
                m[1][1] = one;
                m[2][2] = one;
                m[3][3] = -one;
                Unitary::Two(m)
            }
            GateKind::Swap => {
                let mut m = [[zero; 4]; 4];
                m[0][0] = one;
                m[1][2] = one;
                m[2][1] = one;
                m[3][3] = one;
                Unitary::Two(m)
            }
        }
    }
}

/// Free-function form of [`GateKind::unitary`].
pub fn gate_unitary(kind: GateKind) -> Unitary {
    kind.unitary()
}

/// One gate application: a kind plus its operands.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    operands: [usize; 2],
}

impl Gate {
    /// Single-qubit gate. Panics if `kind` is a two-qubit kind.
    pub fn one(kind: GateKind, q: usize) -> Gate {
        assert_eq!(kind.arity(), 1, "{} takes two qubits", kind.name());
        Gate {
            kind,
            operands: [q, usize::MAX],
        }
    }

    /// Two-qubit gate. Panics if `kind` is a single-qubit kind.
    pub fn two(kind: GateKind, a: usize, b: usize) -> Gate {
        assert_eq!(kind.arity(), 2, "{} takes one qubit", kind.name());
        Gate {
            kind,
            operands: [a, b],
        }
    }

    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} expects {} operands, got {}",
                kind.name(),
                kind.arity(),
                qubits.len()
            )));
        }
        Ok(match qubits {
            [q] => Gate::one(kind, *q),
            [a, b] => Gate::two(kind, *a, *b),
            _ => unreachable!(),
        })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.operands[..self.kind.arity()]
    }

    pub fn touches(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }

    /// Same gate with every operand passed through `f`.
    pub fn remapped(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self.qubits() {
            [q] => Gate::one(self.kind, f(*q)),
            [a, b] => Gate::two(self.kind, f(*a), f(*b)),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        let params = self.kind.params();
        if !params.is_empty() {
            let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", joined.join(","))?;
        }
        let ops: Vec<String> = self.qubits().iter().map(|q| format!("q[{q}]")).collect();
        write!(f, " {}", ops.join(","))
    }
}

/// An ordered gate list over `width` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Circuit {
        Circuit {
            width,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit, validating every gate.
    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(width);
        for g in gates {
            c.try_push(g)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        for &q in gate.qubits() {
            if q >= self.width {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    width: self.width,
                });
            }
        }
        if let [a, b] = gate.qubits() {
            if a == b {
                return Err(Error::DuplicateQubit {
                    gate: gate.kind.name().to_string(),
                    qubit: *a,
                });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends a gate. Panics on an invalid operand; use [`Circuit::try_push`]
    /// for untrusted input.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        if let Err(e) = self.try_push(gate) {
            panic!("{e}");
        }
        self
    }

    pub fn apply1(&mut self, kind: GateKind, q: usize) -> &mut Self {
        self.push(Gate::one(kind, q))
    }

    pub fn apply2(&mut self, kind: GateKind, a: usize, b: usize) -> &mut Self {
        self.push(Gate::two(kind, a, b))
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.apply1(GateKind::H, q)
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.apply1(GateKind::X, q)
    }

    pub fn cx(&mut self, control: usize, target: usize) -> &mut Self {
        self.apply2(GateKind::CX, control, target)
    }

    pub fn cz(&mut self, a: usize, b: usize) -> &mut Self {
        self.apply2(GateKind::CZ, a, b)
    }

    /// Number of gates touching each qubit.
    pub fn gates_per_wire(&self) -> Vec<usize> {
        let mut counts = vec![0; self.width];
        for g in &self.gates {
            for &q in g.qubits() {
                counts[q] += 1;
            }
        }
        counts
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.arity() == 2).count()
    }
}

/// Edge of the circuit DAG: two consecutive gates on one wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DagEdge {
    pub from_gate: usize,
    pub to_gate: usize,
    pub wire: usize,
}

/// All wire edges of the circuit DAG, one per consecutive gate pair per wire,
/// ordered by `to_gate` and then by operand position.
pub fn dag_edges(c: &Circuit) -> Vec<DagEdge> {
    let mut last: Vec<Option<usize>> = vec![None; c.width()];
    let mut edges = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        for &q in g.qubits() {
            if let Some(prev) = last[q] {
                edges.push(DagEdge {
                    from_gate: prev,
                    to_gate: i,
                    wire: q,
                });
            }
            last[q] = Some(i);
        }
    }
    edges
}
