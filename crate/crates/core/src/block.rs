//! Chunk-partitioned statevector execution with cache blocking.
//!
//! The statevector is split into chunks of `2^nc` amplitudes spread over a
//! number of simulated memory spaces. Gates on physical qubits below `nc`
//! touch one chunk at a time and need no data movement. The transpile pass
//! reorders qubits and inserts relocation swaps so that every circuit gate
//! lands below `nc`; only the relocation swaps that cross a space boundary
//! move chunks between spaces.
//!
//! Each space owns a contiguous run of chunks plus exactly one chunk-sized
//! receive buffer. A cross-space swap is processed in rounds, one owned chunk
//! per round: every space pulls its partner chunk into its buffer, all spaces
//! meet at a barrier, then each rewrites its own chunk from the buffer.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::sv::{apply_gate, ProbVector};

const BYTES_PER_AMPLITUDE: usize = 16;

/// Chunk geometry plus the logical-to-physical qubit permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkLayout {
    pub qubits: usize,
    pub nc: usize,
    pub num_spaces: usize,
    /// `perm[logical] = physical`.
    pub perm: Vec<usize>,
}

impl ChunkLayout {
    pub fn new(qubits: usize, nc: usize, num_spaces: usize, perm: Vec<usize>) -> Result<Self> {
        if nc > qubits {
            return Err(Error::InvalidLayout(format!("nc={nc} exceeds width {qubits}")));
        }
        let chunks = 1usize << (qubits - nc);
        if num_spaces == 0 || !num_spaces.is_power_of_two() || num_spaces > chunks {
            return Err(Error::InvalidLayout(format!(
                "{num_spaces} memory spaces cannot evenly hold {chunks} chunks"
            )));
        }
        let mut seen = vec![false; qubits];
        if perm.len() != qubits
            || perm
                .iter()
                .any(|&p| p >= qubits || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidLayout("permutation is not a bijection".into()));
        }
        Ok(ChunkLayout {
            qubits,
            nc,
            num_spaces,
            perm,
        })
    }

    pub fn chunk_len(&self) -> usize {
        1 << self.nc
    }

    pub fn num_chunks(&self) -> usize {
        1 << (self.qubits - self.nc)
    }

    pub fn chunks_per_space(&self) -> usize {
        self.num_chunks() / self.num_spaces
    }

    /// Owned chunks plus the single exchange buffer.
    pub fn peak_bytes_per_space(&self) -> usize {
        (self.chunks_per_space() + 1) * self.chunk_len() * BYTES_PER_AMPLITUDE
    }
}

/// Counters for inter-space data movement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeLog {
    pub nc: usize,
    pub num_spaces: usize,
    pub chunk_transfers: u64,
    pub bytes_moved: u64,
    pub swaps_inserted: u64,
}

/// Output of [`blocking_transpile`].
#[derive(Clone, Debug, PartialEq)]
pub struct Transpiled {
    /// Gates over physical qubits. Any gate touching a qubit `>= nc` is a
    /// relocation swap.
    pub circuit: Circuit,
    /// `final_perm[logical] = physical` after the last gate.
    pub final_perm: Vec<usize>,
    pub swaps_inserted: usize,
}

/// Cache-blocking pass.
///
/// Logical qubits are laid out by first use, so qubits no gate touches end up
/// at physical positions `>= nc`. Gates are then emitted in dependency order,
/// preferring any ready gate that is already local. When only non-local gates
/// are ready, the earliest one has each out-of-chunk operand swapped with the
/// least recently used in-chunk physical qubit it does not itself use.
pub fn blocking_transpile(c: &Circuit, nc: usize) -> Result<Transpiled> {
    let n = c.width();
    if nc == 0 || nc > n {
        return Err(Error::InfeasibleBlocking {
            nc,
            reason: format!("chunk qubits must lie in [1, {n}]"),
        });
    }
    if nc >= n {
        return Ok(Transpiled {
            circuit: c.clone(),
            final_perm: (0..n).collect(),
            swaps_inserted: 0,
        });
    }
    if nc < 2 && c.two_qubit_count() > 0 {
        return Err(Error::InfeasibleBlocking {
            nc,
            reason: "a two-qubit gate cannot fit inside a one-qubit chunk".into(),
        });
    }

    // qubit reordering: first-used qubits take the lowest physical slots
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for g in c.gates() {
        for &q in g.qubits() {
            if !std::mem::replace(&mut placed[q], true) {
                order.push(q);
            }
        }
    }
    order.extend((0..n).filter(|&q| !placed[q]));
    let mut phys = vec![0; n];
    let mut logical_at = vec![0; n];
    for (slot, &q) in order.iter().enumerate() {
        phys[q] = slot;
        logical_at[slot] = q;
    }

    // per-wire dependency counts
    let gates = c.gates();
    let mut wire_lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, g) in gates.iter().enumerate() {
        for &q in g.qubits() {
            wire_lists[q].push(i);
        }
    }
    let mut pos_on_wire = vec![0usize; n];
    let mut waiting = vec![0usize; gates.len()];
    for list in &wire_lists {
        for &i in list.iter().skip(1) {
            waiting[i] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<usize> =
        (0..gates.len()).filter(|&i| waiting[i] == 0).collect();

    let mut out = Circuit::new(n);
    let mut last_used = vec![0u64; nc];
    let mut clock = 1u64;
    let mut swaps = 0usize;

    while !ready.is_empty() {
        let local = ready
            .iter()
            .copied()
            .find(|&i| gates[i].qubits().iter().all(|&q| phys[q] < nc));
        let Some(i) = local else {
            let i = *ready.iter().next().expect("ready is non-empty");
            let g = gates[i];
            let mut in_use: Vec<usize> = g.qubits().iter().map(|&q| phys[q]).collect();
            for &q in g.qubits() {
                if phys[q] < nc {
                    continue;
                }
                let victim = (0..nc)
                    .filter(|v| !in_use.contains(v))
                    .min_by_key(|&v| (last_used[v], v))
                    .expect("nc >= 2 leaves a free slot");
                let high = phys[q];
                out.push(Gate::two(GateKind::Swap, victim, high));
                swaps += 1;
                let displaced = logical_at[victim];
                phys[displaced] = high;
                logical_at[high] = displaced;
                phys[q] = victim;
                logical_at[victim] = q;
                last_used[victim] = clock;
                in_use.push(victim);
                clock += 1;
            }
            continue;
        };
        ready.remove(&i);
        let g = gates[i];
        out.push(g.remapped(|q| phys[q]));
        for &q in g.qubits() {
            last_used[phys[q]] = clock;
            pos_on_wire[q] += 1;
            if let Some(&next) = wire_lists[q].get(pos_on_wire[q]) {
                waiting[next] -= 1;
                if waiting[next] == 0 {
                    ready.insert(next);
                }
            }
        }
        clock += 1;
    }

    Ok(Transpiled {
        circuit: out,
        final_perm: phys,
        swaps_inserted: swaps,
    })
}

/// A statevector held as chunks across simulated memory spaces.
pub struct ChunkedState {
    qubits: usize,
    nc: usize,
    chunks_per_space: usize,
    spaces: Vec<Vec<Complex64>>,
    buffers: Vec<Vec<Complex64>>,
    log: ExchangeLog,
}

impl ChunkedState {
    /// |0...0> over `qubits` qubits in `num_spaces` spaces.
    pub fn zero(qubits: usize, nc: usize, num_spaces: usize) -> Result<ChunkedState> {
        let layout = ChunkLayout::new(qubits, nc, num_spaces, (0..qubits).collect())?;
        let per_space = layout.chunks_per_space() * layout.chunk_len();
        let zero = Complex64::new(0.0, 0.0);
        let mut spaces = vec![vec![zero; per_space]; num_spaces];
        spaces[0][0] = Complex64::new(1.0, 0.0);
        Ok(ChunkedState {
            qubits,
            nc,
            chunks_per_space: layout.chunks_per_space(),
            spaces,
            buffers: vec![vec![zero; layout.chunk_len()]; num_spaces],
            log: ExchangeLog {
                nc,
                num_spaces,
                ..ExchangeLog::default()
            },
        })
    }

    pub fn log(&self) -> ExchangeLog {
        self.log
    }

    /// Bytes actually allocated by the largest space, chunks plus buffers.
    pub fn peak_bytes_per_space(&self) -> usize {
        self.spaces
            .iter()
            .zip(&self.buffers)
            .map(|(s, b)| (s.len() + b.len()) * BYTES_PER_AMPLITUDE)
            .max()
            .unwrap_or(0)
    }

    /// Applies a gate on physical qubits. Gates below `nc` run chunk-locally
    /// in every space; a swap between an in-chunk and an out-of-chunk qubit
    /// runs as a chunk exchange.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        let nc = self.nc;
        if gate.qubits().iter().all(|&q| q < nc) {
            let chunk = 1usize << nc;
            self.spaces.par_iter_mut().for_each(|space| {
                for c in space.chunks_mut(chunk) {
                    apply_gate(c, gate);
                }
            });
            return Ok(());
        }
        match (gate.kind, gate.qubits()) {
            (GateKind::Swap, &[a, b]) if (a < nc) != (b < nc) => {
                let (low, high) = if a < nc { (a, b) } else { (b, a) };
                self.exchange_swap(low, high - nc);
                Ok(())
            }
            _ => Err(Error::InfeasibleBlocking {
                nc,
                reason: format!("gate `{gate}` is not chunk-local"),
            }),
        }
    }

    /// SWAP between in-chunk qubit `low` and chunk-index bit `bit`.
    fn exchange_swap(&mut self, low: usize, bit: usize) {
        let chunk = 1usize << self.nc;
        let low_mask = 1usize << low;
        let local_bits = self.chunks_per_space.trailing_zeros() as usize;
        if bit < local_bits {
            // both chunks live in the same space: no transfer
            let step = 1usize << bit;
            for space in &mut self.spaces {
                for slot in 0..self.chunks_per_space {
                    if slot & step != 0 {
                        continue;
                    }
                    let (head, tail) = space.split_at_mut((slot + step) * chunk);
                    let c0 = &mut head[slot * chunk..(slot + 1) * chunk];
                    let c1 = &mut tail[..chunk];
                    for i in 0..chunk {
                        if i & low_mask != 0 {
                            std::mem::swap(&mut c0[i], &mut c1[i ^ low_mask]);
                        }
                    }
                }
            }
            return;
        }
        let space_bit = 1usize << (bit - local_bits);
        for slot in 0..self.chunks_per_space {
            let range = slot * chunk..(slot + 1) * chunk;
            // receive phase
            let spaces = &self.spaces;
            self.buffers
                .par_iter_mut()
                .enumerate()
                .for_each(|(s, buf)| buf.copy_from_slice(&spaces[s ^ space_bit][range.clone()]));
            let moved = self.spaces.len() as u64;
            self.log.chunk_transfers += moved;
            self.log.bytes_moved += moved * (chunk * BYTES_PER_AMPLITUDE) as u64;
            // update phase
            self.spaces
                .par_iter_mut()
                .zip(self.buffers.par_iter())
                .enumerate()
                .for_each(|(s, (space, buf))| {
                    let mine = &mut space[range.clone()];
                    let upper = s & space_bit != 0;
                    for (i, amp) in mine.iter_mut().enumerate() {
                        let low_set = i & low_mask != 0;
                        if low_set != upper {
                            *amp = buf[i ^ low_mask];
                        }
                    }
                });
        }
    }

    /// Probabilities in physical qubit order.
    pub fn physical_probabilities(&self) -> Vec<f64> {
        self.spaces
            .iter()
            .flat_map(|s| s.iter().map(|a| a.norm_sqr()))
            .collect()
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }
}

/// Reorders a physical-order distribution into logical order, where
/// `perm[logical] = physical`.
pub fn unpermute(physical: &[f64], perm: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; physical.len()];
    for (x, &p) in physical.iter().enumerate() {
        let mut y = 0usize;
        for (logical, &ph) in perm.iter().enumerate() {
            y |= ((x >> ph) & 1) << logical;
        }
        out[y] = p;
    }
    out
}

/// Transpiles `c` for chunk size `nc` and runs it over `num_spaces` spaces.
pub fn chunked_simulate(
    c: &Circuit,
    nc: usize,
    num_spaces: usize,
) -> Result<(ProbVector, ExchangeLog)> {
    let t = blocking_transpile(c, nc)?;
    let mut state = ChunkedState::zero(c.width(), nc, num_spaces)?;
    for g in t.circuit.gates() {
        state.apply(g)?;
    }
    let mut log = state.log();
    log.swaps_inserted = t.swaps_inserted as u64;
    let probs = unpermute(&state.physical_probabilities(), &t.final_perm);
    Ok((ProbVector::new(probs)?, log))
}

/// Bytes of a double-precision statevector of `n` qubits, in decimal GB.
pub fn estimate_memory_gb(n: u32) -> f64 {
    2f64.powi(n as i32) * BYTES_PER_AMPLITUDE as f64 / 1e9
}
