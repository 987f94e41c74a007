//! Fragment variant enumeration, simulation and shot attribution.
//!
//! Each upstream cut qubit is read out in one of three bases and each
//! downstream cut qubit starts in one of four states, so a fragment with
//! `u` upstream and `d` downstream cuts has `3^u * 4^d` variants. After
//! simulation, the raw distribution of a variant is folded onto the
//! fragment's effective qubits with a `+1/-1` sign per measured cut qubit.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::cutter::SubcircuitSpec;
use crate::error::{Error, Result};
use crate::sv::{apply_basis_rotation, probabilities, simulate, MeasureBasis, ProbVector};

/// Preparation of a downstream cut qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InitState {
    /// |0>
    Zero,
    /// |1>
    One,
    /// |+>
    Plus,
    /// |+i>
    PlusI,
}

impl InitState {
    pub const ALL: [InitState; 4] = [
        InitState::Zero,
        InitState::One,
        InitState::Plus,
        InitState::PlusI,
    ];

    /// Gates that prepare this state from |0>.
    pub fn preparation(self) -> &'static [GateKind] {
        match self {
            InitState::Zero => &[],
            InitState::One => &[GateKind::X],
            InitState::Plus => &[GateKind::H],
            InitState::PlusI => &[GateKind::H, GateKind::S],
        }
    }
}

/// Observable attributed to one measured cut qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MeasureOp {
    I,
    Z,
    X,
    Y,
}

impl MeasureOp {
    /// Observables recoverable from a readout in `basis`.
    pub fn from_basis(basis: MeasureBasis) -> &'static [MeasureOp] {
        match basis {
            MeasureBasis::Comp => &[MeasureOp::I, MeasureOp::Z],
            MeasureBasis::X => &[MeasureOp::X],
            MeasureBasis::Y => &[MeasureOp::Y],
        }
    }

    pub fn basis(self) -> MeasureBasis {
        match self {
            MeasureOp::I | MeasureOp::Z => MeasureBasis::Comp,
            MeasureOp::X => MeasureBasis::X,
            MeasureOp::Y => MeasureBasis::Y,
        }
    }
}

/// One basis per upstream cut and one preparation per downstream cut, in
/// the order of the fragment's `upstream_cuts` and `downstream_cuts`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VariantAssignment {
    pub upstream: Vec<MeasureBasis>,
    pub downstream: Vec<InitState>,
}

impl fmt::Display for VariantAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u")?;
        for b in &self.upstream {
            write!(f, "-{b:?}")?;
        }
        write!(f, "_d")?;
        for s in &self.downstream {
            write!(f, "-{s:?}")?;
        }
        Ok(())
    }
}

/// All variants of a fragment in lexicographic order, first position most
/// significant.
pub fn enumerate_variants(spec: &SubcircuitSpec) -> Vec<VariantAssignment> {
    let u = spec.upstream_cuts.len();
    let d = spec.downstream_cuts.len();
    let mut out = Vec::with_capacity(spec.variant_count());
    let mut digits = vec![0usize; u + d];
    let radix = |i: usize| if i < u { 3 } else { 4 };
    loop {
        out.push(VariantAssignment {
            upstream: digits[..u].iter().map(|&x| MeasureBasis::ALL[x]).collect(),
            downstream: digits[u..].iter().map(|&x| InitState::ALL[x]).collect(),
        });
        let mut i = u + d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radix(i) {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// The fragment with preparations prepended and basis rotations appended.
pub fn build_variant_circuit(spec: &SubcircuitSpec, a: &VariantAssignment) -> Result<Circuit> {
    check_assignment(spec, a)?;
    let mut c = Circuit::new(spec.width());
    for (&q, init) in spec.downstream_qubits.iter().zip(&a.downstream) {
        for &g in init.preparation() {
            c.apply1(g, q);
        }
    }
    for &g in spec.fragment.gates() {
        c.push(g);
    }
    for (&q, &basis) in spec.upstream_qubits.iter().zip(&a.upstream) {
        c = apply_basis_rotation(&c, q, basis);
    }
    Ok(c)
}

fn check_assignment(spec: &SubcircuitSpec, a: &VariantAssignment) -> Result<()> {
    if a.upstream.len() != spec.upstream_cuts.len() || a.downstream.len() != spec.downstream_cuts.len()
    {
        return Err(Error::InvalidCuts(format!(
            "assignment {a} does not match a fragment with {} upstream and {} downstream cuts",
            spec.upstream_cuts.len(),
            spec.downstream_cuts.len()
        )));
    }
    Ok(())
}

/// Raw output distributions keyed by (fragment index, variant).
pub type VariantResults = BTreeMap<(usize, VariantAssignment), ProbVector>;

/// Simulates every variant of every fragment on a pool of `workers`
/// threads; `0` picks `min(available cores, job count)`. The result does
/// not depend on the worker count.
pub fn evaluate_all(specs: &[SubcircuitSpec], workers: usize) -> Result<VariantResults> {
    let jobs: Vec<(usize, VariantAssignment)> = specs
        .iter()
        .enumerate()
        .flat_map(|(f, s)| enumerate_variants(s).into_iter().map(move |a| (f, a)))
        .collect();
    let threads = if workers == 0 {
        std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(jobs.len().max(1))
    } else {
        workers
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("cannot start worker pool: {e}")))?;
    let outputs: Vec<ProbVector> = pool.install(|| {
        jobs.par_iter()
            .map(|(f, a)| {
                let run = || -> Result<ProbVector> {
                    let c = build_variant_circuit(&specs[*f], a)?;
                    Ok(probabilities(&simulate(&c)?))
                };
                run().map_err(|e| Error::Evaluation {
                    key: format!("fragment {f} variant {a}"),
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(jobs.into_iter().zip(outputs).collect())
}

/// A variant's distribution over the effective qubits, weighted by the
/// cut-qubit signs of one observable choice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttributedDistribution {
    pub fragment: usize,
    pub assignment: VariantAssignment,
    /// One observable per upstream cut.
    pub ops: Vec<MeasureOp>,
    /// Indexed by effective qubits, `effective_qubits[0]` least significant.
    pub values: Vec<f64>,
}

/// Folds a raw variant distribution onto the effective qubits. A readout in
/// the computational basis yields both the `I` (all signs `+1`) and the `Z`
/// attribution for that cut; `X` and `Y` readouts yield the signed one.
pub fn attribute_shots(
    spec: &SubcircuitSpec,
    fragment: usize,
    a: &VariantAssignment,
    raw: &ProbVector,
) -> Result<Vec<AttributedDistribution>> {
    check_assignment(spec, a)?;
    let expected = 1usize << spec.width();
    if raw.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: raw.len(),
        });
    }
    let choices: Vec<&[MeasureOp]> = a.upstream.iter().map(|&b| MeasureOp::from_basis(b)).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let ops: Vec<MeasureOp> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let sign_mask: usize = ops
            .iter()
            .zip(&spec.upstream_qubits)
            .filter(|(op, _)| **op != MeasureOp::I)
            .fold(0, |m, (_, &q)| m | (1 << q));
        out.push(AttributedDistribution {
            fragment,
            assignment: a.clone(),
            ops,
            values: fold(raw.values(), &spec.effective_qubits, sign_mask),
        });
        let mut i = pick.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

fn fold(raw: &[f64], effective: &[usize], sign_mask: usize) -> Vec<f64> {
    let mut out = vec![0.0; 1 << effective.len()];
    for (x, &p) in raw.iter().enumerate() {
        let mut idx = 0;
        for (k, &q) in effective.iter().enumerate() {
            idx |= ((x >> q) & 1) << k;
        }
        if (x & sign_mask).count_ones() % 2 == 1 {
            out[idx] -= p;
        } else {
            out[idx] += p;
        }
    }
    out
}

/// Attributed vectors of a whole plan, keyed by fragment, observables and
/// preparations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AttributedSet {
    entries: BTreeMap<(usize, Vec<MeasureOp>, Vec<InitState>), Vec<f64>>,
}

impl AttributedSet {
    pub fn insert(&mut self, d: AttributedDistribution) {
        self.entries
            .insert((d.fragment, d.ops, d.assignment.downstream), d.values);
    }

    pub fn get(&self, fragment: usize, ops: &[MeasureOp], inits: &[InitState]) -> Result<&[f64]> {
        self.entries
            .get(&(fragment, ops.to_vec(), inits.to_vec()))
            .map(Vec::as_slice)
            .ok_or_else(|| {
                Error::MissingVariant(format!(
                    "fragment {fragment} observables {ops:?} preparations {inits:?}"
                ))
            })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Attributes every raw result in `results`.
pub fn attribute_all(specs: &[SubcircuitSpec], results: &VariantResults) -> Result<AttributedSet> {
    let parts: Vec<Vec<AttributedDistribution>> = results
        .par_iter()
        .map(|((f, a), raw)| {
            let spec = specs.get(*f).ok_or_else(|| {
                Error::MissingVariant(format!("result for unknown fragment {f}"))
            })?;
            attribute_shots(spec, *f, a, raw)
        })
        .collect::<Result<_>>()?;
    let mut set = AttributedSet::default();
    for d in parts.into_iter().flatten() {
        set.insert(d);
    }
    Ok(set)
}

/// Entry of an on-disk vector directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpillEntry {
    pub key: String,
    pub fragment: Option<usize>,
    pub assignment: Option<VariantAssignment>,
    pub len: usize,
    pub file: String,
}

/// `index.json` of a vector directory; each vector is a file of
/// little-endian `f64`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpillIndex {
    pub entries: Vec<SpillEntry>,
}

pub const SPILL_INDEX: &str = "index.json";

fn write_f64s(path: &Path, values: &[f64]) -> Result<()> {
    let mut bytes = Vec::with_capacity(values.len() * 8);
    for v in values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Reads one little-endian `f64` vector file.
pub fn read_f64s(path: &Path) -> Result<Vec<f64>> {
    let bytes = fs::read(path)?;
    if bytes.len() % 8 != 0 {
        return Err(Error::InvalidSpec(format!(
            "{} is not a whole number of f64 values",
            path.display()
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect())
}

/// Writes raw variant results to `dir` plus an index, creating `dir`.
pub fn spill_results(dir: &Path, results: &VariantResults) -> Result<SpillIndex> {
    fs::create_dir_all(dir)?;
    let mut index = SpillIndex::default();
    for ((f, a), p) in results {
        let key = format!("f{f}_{a}");
        let file = format!("{key}.bin");
        write_f64s(&dir.join(&file), p.values())?;
        index.entries.push(SpillEntry {
            key,
            fragment: Some(*f),
            assignment: Some(a.clone()),
            len: p.len(),
            file,
        });
    }
    write_index(dir, &index)?;
    Ok(index)
}

/// Writes a single named vector to `dir` plus an index, creating `dir`.
pub fn spill_vector(dir: &Path, key: &str, values: &[f64]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let file = format!("{key}.bin");
    let path = dir.join(&file);
    write_f64s(&path, values)?;
    let index = SpillIndex {
        entries: vec![SpillEntry {
            key: key.to_string(),
            fragment: None,
            assignment: None,
            len: values.len(),
            file,
        }],
    };
    write_index(dir, &index)?;
    Ok(path)
}

fn write_index(dir: &Path, index: &SpillIndex) -> Result<()> {
    fs::write(dir.join(SPILL_INDEX), serde_json::to_string_pretty(index)?)?;
    Ok(())
}

/// Loads raw variant results written by [`spill_results`].
pub fn load_results(dir: &Path) -> Result<VariantResults> {
    let index: SpillIndex = serde_json::from_str(&fs::read_to_string(dir.join(SPILL_INDEX))?)?;
    let mut out = VariantResults::new();
    for e in index.entries {
        let (Some(f), Some(a)) = (e.fragment, e.assignment) else {
            return Err(Error::MissingVariant(format!("entry {} has no variant key", e.key)));
        };
        let values = read_f64s(&dir.join(&e.file))?;
        if values.len() != e.len {
            return Err(Error::DimensionMismatch {
                expected: e.len,
                actual: values.len(),
            });
        }
        out.insert((f, a), ProbVector::new(values)?);
    }
    Ok(out)
}
