//! Dense statevector simulation.
//!
//! This is the reference path: the blocked executor and the cut-and-rebuild
//! pipeline are both checked against it. Kernels update amplitudes in place,
//! one gate at a time, with bit-stride iteration.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, Unitary};
use crate::error::{Error, Result};

/// Widest circuit `simulate` accepts unless configured otherwise
/// (2^28 amplitudes, about 4.3 GB).
pub const DEFAULT_MAX_WIDTH: usize = 28;

/// Below this many amplitudes kernels stay single-threaded.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Copy, Debug)]
pub struct SimConfig {
    pub max_width: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            max_width: DEFAULT_MAX_WIDTH,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0...0> on `qubits` qubits.
    pub fn zero(qubits: usize) -> StateVector {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector> {
        if !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: amps.len().next_power_of_two(),
                actual: amps.len(),
            });
        }
        let qubits = amps.len().trailing_zeros() as usize;
        Ok(StateVector { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, gate: &Gate) {
        apply_gate(&mut self.amps, gate);
    }
}

/// A probability distribution over `qubits` qubits, indexed by basis state.
///
/// Raw simulator output is non-negative; vectors produced by shot
/// attribution or reconstruction may carry signed entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbVector {
    qubits: usize,
    values: Vec<f64>,
}

impl ProbVector {
    pub fn new(values: Vec<f64>) -> Result<ProbVector> {
        if !values.len().is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: values.len().next_power_of_two(),
                actual: values.len(),
            });
        }
        Ok(ProbVector {
            qubits: values.len().trailing_zeros() as usize,
            values,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &ProbVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Simulates `c` from |0...0> with the default width limit.
pub fn simulate(c: &Circuit) -> Result<StateVector> {
    simulate_with(c, &SimConfig::default())
}

pub fn simulate_with(c: &Circuit, config: &SimConfig) -> Result<StateVector> {
    if c.width() > config.max_width {
        return Err(Error::WidthLimit {
            width: c.width(),
            limit: config.max_width,
        });
    }
    let mut state = StateVector::zero(c.width());
    for g in c.gates() {
        state.apply(g);
    }
    Ok(state)
}

/// `p[k] = |amp[k]|^2`.
pub fn probabilities(s: &StateVector) -> ProbVector {
    ProbVector {
        qubits: s.qubits,
        values: s.amps.iter().map(|a| a.norm_sqr()).collect(),
    }
}

/// Measurement basis for one qubit, realised as a rotation before a
/// computational-basis readout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MeasureBasis {
    Comp,
    X,
    Y,
}

impl MeasureBasis {
    pub const ALL: [MeasureBasis; 3] = [MeasureBasis::Comp, MeasureBasis::X, MeasureBasis::Y];
}

/// Returns `c` with the rotation that maps `basis` onto the computational
/// basis appended on `qubit`: nothing for `Comp`, `H` for `X`, `Sdg; H`
/// for `Y`.
pub fn apply_basis_rotation(c: &Circuit, qubit: usize, basis: MeasureBasis) -> Circuit {
    let mut out = c.clone();
    match basis {
        MeasureBasis::Comp => {}
        MeasureBasis::X => {
            out.h(qubit);
        }
        MeasureBasis::Y => {
            out.apply1(GateKind::Sdg, qubit).h(qubit);
        }
    }
    out
}

/// Applies one gate to a full amplitude slice. Every operand must be below
/// `log2(amps.len())`.
pub fn apply_gate(amps: &mut [Complex64], gate: &Gate) {
    match *gate.qubits() {
        [q] => match gate.kind.unitary() {
            Unitary::One(m) => apply_one(amps, q, &m),
            Unitary::Two(_) => unreachable!(),
        },
        [a, b] => match gate.kind {
            GateKind::CX => apply_cx(amps, a, b),
            GateKind::CZ => apply_cz(amps, a, b),
            GateKind::Swap => apply_swap(amps, a, b),
            _ => unreachable!("two-qubit kinds are CX, CZ and SWAP"),
        },
        _ => unreachable!(),
    }
}

/// Runs `f` over independent blocks of `2^(top + 1)` amplitudes, in
/// parallel when the state is large enough.
fn for_blocks<F>(amps: &mut [Complex64], top: usize, f: F)
where
    F: Fn(&mut [Complex64]) + Sync + Send,
{
    let block = 1usize << (top + 1);
    if amps.len() >= PARALLEL_THRESHOLD && amps.len() / block >= 4 {
        amps.par_chunks_mut(block).for_each(f);
    } else {
        amps.chunks_mut(block).for_each(f);
    }
}

fn apply_one(amps: &mut [Complex64], q: usize, m: &[[Complex64; 2]; 2]) {
    let stride = 1usize << q;
    let kernel = |pair: (&mut Complex64, &mut Complex64)| {
        let (a0, a1) = (*pair.0, *pair.1);
        *pair.0 = m[0][0] * a0 + m[0][1] * a1;
        *pair.1 = m[1][0] * a0 + m[1][1] * a1;
    };
    let block = stride << 1;
    if amps.len() >= PARALLEL_THRESHOLD && amps.len() / block < 4 {
        // few wide blocks: split inside each one instead
        for chunk in amps.chunks_mut(block) {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(kernel);
        }
    } else {
        for_blocks(amps, q, |chunk| {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.iter_mut().zip(hi.iter_mut()).for_each(kernel);
        });
    }
}

fn apply_cx(amps: &mut [Complex64], control: usize, target: usize) {
    let (cm, tm) = (1usize << control, 1usize << target);
    for_blocks(amps, control.max(target), |chunk| {
        for i in 0..chunk.len() {
            if i & cm != 0 && i & tm == 0 {
                chunk.swap(i, i | tm);
            }
        }
    });
}

fn apply_cz(amps: &mut [Complex64], a: usize, b: usize) {
    let mask = (1usize << a) | (1usize << b);
    for_blocks(amps, a.max(b), |chunk| {
        for (i, amp) in chunk.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    });
}

fn apply_swap(amps: &mut [Complex64], a: usize, b: usize) {
    let (am, bm) = (1usize << a, 1usize << b);
    for_blocks(amps, a.max(b), |chunk| {
        for i in 0..chunk.len() {
            if i & am != 0 && i & bm == 0 {
                chunk.swap(i, (i ^ am) | bm);
            }
        }
    });
}
