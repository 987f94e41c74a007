//! Recombination of attributed fragment distributions.
//!
//! Every cut contributes a factor of four terms. Term `i` of a cut selects a
//! signed combination on each side:
//!
//! | i | upstream | downstream              |
//! |---|----------|-------------------------|
//! | 1 | I + Z    | p(0)                    |
//! | 2 | I - Z    | p(1)                    |
//! | 3 | X        | 2 p(+) - p(0) - p(1)    |
//! | 4 | Y        | 2 p(+i) - p(0) - p(1)   |
//!
//! The full distribution is `2^-K` times the sum over all `4^K` term tuples
//! of the Kronecker product of the fragment term vectors, with the qubits
//! of fragment 0 least significant, permuted back to source qubit order.

use rayon::prelude::*;

use crate::cutter::{CutPlan, SubcircuitSpec};
use crate::error::{Error, Result};
use crate::evaluator::{AttributedSet, InitState, MeasureOp};
use crate::sv::ProbVector;

/// Number of independent partial sums; fixed so results do not depend on
/// the thread count.
const PARTIAL_SUMS: usize = 64;

fn upstream_rule(term: u8) -> &'static [(MeasureOp, f64)] {
    match term {
        1 => &[(MeasureOp::I, 1.0), (MeasureOp::Z, 1.0)],
        2 => &[(MeasureOp::I, 1.0), (MeasureOp::Z, -1.0)],
        3 => &[(MeasureOp::X, 1.0)],
        4 => &[(MeasureOp::Y, 1.0)],
        _ => unreachable!("term index out of range"),
    }
}

fn downstream_rule(term: u8) -> &'static [(InitState, f64)] {
    match term {
        1 => &[(InitState::Zero, 1.0)],
        2 => &[(InitState::One, 1.0)],
        3 => &[
            (InitState::Plus, 2.0),
            (InitState::Zero, -1.0),
            (InitState::One, -1.0),
        ],
        4 => &[
            (InitState::PlusI, 2.0),
            (InitState::Zero, -1.0),
            (InitState::One, -1.0),
        ],
        _ => unreachable!("term index out of range"),
    }
}

/// Term vector of one fragment over its effective qubits. `terms` holds a
/// value in `1..=4` for every cut index of the plan; only the fragment's
/// own cuts are read.
pub fn fragment_term(
    spec: &SubcircuitSpec,
    fragment: usize,
    terms: &[u8],
    attributed: &AttributedSet,
) -> Result<Vec<f64>> {
    if let Some(&bad) = terms.iter().find(|t| !(1..=4).contains(*t)) {
        return Err(Error::InvalidCuts(format!("term index {bad} is not in 1..=4")));
    }
    let up: Vec<&[(MeasureOp, f64)]> = spec
        .upstream_cuts
        .iter()
        .map(|&k| terms.get(k).map(|&t| upstream_rule(t)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidCuts("term tuple shorter than cut list".into()))?;
    let down: Vec<&[(InitState, f64)]> = spec
        .downstream_cuts
        .iter()
        .map(|&k| terms.get(k).map(|&t| downstream_rule(t)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidCuts("term tuple shorter than cut list".into()))?;
    let mut out = vec![0.0; 1 << spec.num_effective()];
    let radices: Vec<usize> = up.iter().map(|r| r.len()).chain(down.iter().map(|r| r.len())).collect();
    let mut pick = vec![0usize; radices.len()];
    let mut ops = Vec::with_capacity(up.len());
    let mut inits = Vec::with_capacity(down.len());
    loop {
        ops.clear();
        inits.clear();
        let mut coef = 1.0;
        for (rule, &i) in up.iter().zip(&pick) {
            ops.push(rule[i].0);
            coef *= rule[i].1;
        }
        for (rule, &i) in down.iter().zip(&pick[up.len()..]) {
            inits.push(rule[i].0);
            coef *= rule[i].1;
        }
        let v = attributed.get(fragment, &ops, &inits)?;
        if v.len() != out.len() {
            return Err(Error::DimensionMismatch {
                expected: out.len(),
                actual: v.len(),
            });
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += coef * x;
        }
        let mut i = pick.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < radices[i] {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Rebuilds the uncut output distribution. Entries are returned as
/// computed, without clamping small negative values.
pub fn reconstruct(plan: &CutPlan, attributed: &AttributedSet) -> Result<ProbVector> {
    let k = plan.num_cuts();
    let frags = &plan.subcircuits;
    // term vectors of every fragment for every restriction of the term tuple
    let incident: Vec<Vec<usize>> = frags.iter().map(SubcircuitSpec::incident_cuts).collect();
    let tables: Vec<Vec<Vec<f64>>> = frags
        .par_iter()
        .enumerate()
        .map(|(f, spec)| {
            let cuts = &incident[f];
            let mut terms = vec![1u8; k];
            (0..1usize << (2 * cuts.len()))
                .map(|code| {
                    for (j, &cut) in cuts.iter().enumerate() {
                        terms[cut] = ((code >> (2 * (cuts.len() - 1 - j))) & 3) as u8 + 1;
                    }
                    fragment_term(spec, f, &terms, attributed)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let zero: Vec<Vec<bool>> = tables
        .iter()
        .map(|t| t.iter().map(|v| v.iter().all(|&x| x == 0.0)).collect())
        .collect();
    let total_bits: usize = frags.iter().map(SubcircuitSpec::num_effective).sum();
    let dim = 1usize << total_bits;
    let num_terms = 1usize << (2 * k);
    let parts = PARTIAL_SUMS.min(num_terms);
    let per_part = num_terms.div_ceil(parts);

    let partials: Vec<Vec<f64>> = (0..parts)
        .into_par_iter()
        .map(|part| {
            let mut acc = vec![0.0; dim];
            let mut prod = vec![0.0; dim];
            let mut scratch = vec![0.0; dim];
            let lo = part * per_part;
            let hi = (lo + per_part).min(num_terms);
            'terms: for t in lo..hi {
                // digit of cut j (0-based term) = bits 2(K-1-j).. of t
                let mut rows = Vec::with_capacity(frags.len());
                for (f, cuts) in incident.iter().enumerate() {
                    let mut code = 0;
                    for &cut in cuts {
                        code = (code << 2) | ((t >> (2 * (k - 1 - cut))) & 3);
                    }
                    if zero[f][code] {
                        continue 'terms;
                    }
                    rows.push(&tables[f][code]);
                }
                let mut len = rows[0].len();
                prod[..len].copy_from_slice(rows[0]);
                for row in &rows[1..] {
                    for (hi_i, &h) in row.iter().enumerate() {
                        for lo_i in 0..len {
                            scratch[hi_i * len + lo_i] = h * prod[lo_i];
                        }
                    }
                    len *= row.len();
                    prod[..len].copy_from_slice(&scratch[..len]);
                }
                for (a, p) in acc.iter_mut().zip(&prod) {
                    *a += p;
                }
            }
            acc
        })
        .collect();
    let mut sum = tree_sum(partials);
    let scale = 0.5f64.powi(k as i32);
    for v in &mut sum {
        *v *= scale;
    }
    // combined bit position -> source qubit
    let order: Vec<usize> = frags.iter().flat_map(|s| s.output_map.iter().copied()).collect();
    if order.len() != plan.source_width {
        return Err(Error::DimensionMismatch {
            expected: plan.source_width,
            actual: order.len(),
        });
    }
    let mut out = vec![0.0; dim];
    for (x, &v) in sum.iter().enumerate() {
        let mut y = 0;
        for (bit, &q) in order.iter().enumerate() {
            y |= ((x >> bit) & 1) << q;
        }
        out[y] = v;
    }
    ProbVector::new(out)
}

/// Pairwise sum in a fixed shape.
fn tree_sum(mut parts: Vec<Vec<f64>>) -> Vec<f64> {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop().unwrap_or_default()
}

/// `0.5 * sum |p - q|`.
pub fn total_variation_distance(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: q.len(),
        });
    }
    Ok(0.5 * p.values().iter().zip(q.values()).map(|(a, b)| (a - b).abs()).sum::<f64>())
}
