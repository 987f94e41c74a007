//! Seeded generators for the benchmark circuit families.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64`, so a `(family, n,
//! seed, params)` tuple yields the same gate list on every platform.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Adder,
    Aqft,
    Bv,
    Hwea,
    Supremacy,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Adder,
        Family::Aqft,
        Family::Bv,
        Family::Hwea,
        Family::Supremacy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Adder => "adder",
            Family::Aqft => "aqft",
            Family::Bv => "bv",
            Family::Hwea => "hwea",
            Family::Supremacy => "supremacy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{s}`")))
    }
}

/// Family, size, seed and the optional per-family knobs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Largest `k` of the kept `R_k` rotations; default `ceil(log2 n) + 2`.
    pub aqft_degree: Option<usize>,
    /// Seeded `RY` layer before the transform, so the output is not uniform.
    pub aqft_random_input: bool,
    /// Entangling layers; default 1.
    pub hwea_layers: Option<usize>,
    /// Hidden string of `n - 1` bits, character `i` for qubit `i`; default
    /// drawn from the seed.
    pub bv_hidden: Option<String>,
    /// `(rows, cols)`; default the most square factorisation of `n`.
    pub grid: Option<(usize, usize)>,
    /// CZ layers; default 8.
    pub depth: Option<usize>,
    /// Basis-state inputs `(a, b)`; default puts both registers in uniform
    /// superposition.
    pub adder_inputs: Option<(u64, u64)>,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> GenSpec {
        GenSpec {
            family,
            n,
            seed,
            aqft_degree: None,
            aqft_random_input: false,
            hwea_layers: None,
            bv_hidden: None,
            grid: None,
            depth: None,
            adder_inputs: None,
        }
    }

    pub fn with_aqft_degree(mut self, degree: usize) -> Self {
        self.aqft_degree = Some(degree);
        self
    }

    pub fn with_aqft_random_input(mut self) -> Self {
        self.aqft_random_input = true;
        self
    }

    pub fn with_hwea_layers(mut self, layers: usize) -> Self {
        self.hwea_layers = Some(layers);
        self
    }

    pub fn with_bv_hidden(mut self, hidden: impl Into<String>) -> Self {
        self.bv_hidden = Some(hidden.into());
        self
    }

    pub fn with_grid(mut self, rows: usize, cols: usize) -> Self {
        self.grid = Some((rows, cols));
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn with_adder_inputs(mut self, a: u64, b: u64) -> Self {
        self.adder_inputs = Some((a, b));
        self
    }
}

/// Builds the circuit described by `spec`.
pub fn gen(spec: &GenSpec) -> Result<Circuit> {
    if spec.n == 0 {
        return Err(Error::InvalidSpec("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Adder => adder(spec),
        Family::Aqft => aqft(spec, &mut rng),
        Family::Bv => bv(spec, &mut rng),
        Family::Hwea => hwea(spec, &mut rng),
        Family::Supremacy => supremacy(spec, &mut rng),
    }
}

/// Adder qubit layout for `n` qubits: carry-in, then interleaved `b_i`,
/// `a_i`, then carry-out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdderLayout {
    pub bits: usize,
}

impl AdderLayout {
    pub fn for_width(n: usize) -> Result<AdderLayout> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidSpec("adder requires even n >= 4".into()));
        }
        Ok(AdderLayout { bits: (n - 2) / 2 })
    }

    pub fn carry_in(&self) -> usize {
        0
    }

    pub fn b(&self, i: usize) -> usize {
        2 * i + 1
    }

    pub fn a(&self, i: usize) -> usize {
        2 * i + 2
    }

    pub fn carry_out(&self) -> usize {
        2 * self.bits + 1
    }

    /// Reads `(a, b + carry * 2^bits)` from a computational basis index.
    pub fn decode(&self, index: usize) -> (u64, u64) {
        let bit = |q: usize| ((index >> q) & 1) as u64;
        let mut a = 0;
        let mut sum = 0;
        for i in 0..self.bits {
            a |= bit(self.a(i)) << i;
            sum |= bit(self.b(i)) << i;
        }
        sum |= bit(self.carry_out()) << self.bits;
        (a, sum)
    }
}

fn toffoli(c: &mut Circuit, a: usize, b: usize, t: usize) {
    c.h(t);
    c.cx(b, t);
    c.apply1(GateKind::Tdg, t);
    c.cx(a, t);
    c.apply1(GateKind::T, t);
    c.cx(b, t);
    c.apply1(GateKind::Tdg, t);
    c.cx(a, t);
    c.apply1(GateKind::T, b);
    c.apply1(GateKind::T, t);
    c.h(t);
    c.cx(a, b);
    c.apply1(GateKind::T, a);
    c.apply1(GateKind::Tdg, b);
    c.cx(a, b);
}

fn adder(spec: &GenSpec) -> Result<Circuit> {
    if !spec.n.is_multiple_of(2) {
        return Err(Error::InvalidSpec("adder requires even n".into()));
    }
    let l = AdderLayout::for_width(spec.n)?;
    let mut c = Circuit::new(spec.n);
    match spec.adder_inputs {
        Some((a, b)) => {
            if a >> l.bits != 0 || b >> l.bits != 0 {
                return Err(Error::InvalidSpec(format!(
                    "adder inputs must fit in {} bits",
                    l.bits
                )));
            }
            for i in 0..l.bits {
                if (a >> i) & 1 == 1 {
                    c.x(l.a(i));
                }
                if (b >> i) & 1 == 1 {
                    c.x(l.b(i));
                }
            }
        }
        None => {
            for i in 0..l.bits {
                c.h(l.a(i));
                c.h(l.b(i));
            }
        }
    }
    let carry = |i: usize| if i == 0 { l.carry_in() } else { l.a(i - 1) };
    // MAJ up the chain
    for i in 0..l.bits {
        let (x, y, z) = (carry(i), l.b(i), l.a(i));
        c.cx(z, y);
        c.cx(z, x);
        toffoli(&mut c, x, y, z);
    }
    c.cx(l.a(l.bits - 1), l.carry_out());
    // UMA back down
    for i in (0..l.bits).rev() {
        let (x, y, z) = (carry(i), l.b(i), l.a(i));
        toffoli(&mut c, x, y, z);
        c.cx(z, x);
        c.cx(x, y);
    }
    Ok(c)
}

fn aqft(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Circuit> {
    let n = spec.n;
    let degree = spec
        .aqft_degree
        .unwrap_or_else(|| (n as f64).log2().ceil() as usize + 2);
    if degree == 0 {
        return Err(Error::InvalidSpec("aqft degree must be positive".into()));
    }
    let mut c = Circuit::new(n);
    if spec.aqft_random_input {
        for q in 0..n {
            c.apply1(GateKind::RY(rng.gen_range(0.0..PI)), q);
        }
    }
    for target in (0..n).rev() {
        c.h(target);
        for control in (0..target).rev() {
            // R_k with k = distance + 1
            let k = target - control + 1;
            if k > degree {
                continue;
            }
            let lambda = 2.0 * PI / 2f64.powi(k as i32);
            controlled_phase(&mut c, lambda, control, target);
        }
    }
    Ok(c)
}

fn controlled_phase(c: &mut Circuit, lambda: f64, control: usize, target: usize) {
    c.apply1(GateKind::U1(lambda / 2.0), control);
    c.cx(control, target);
    c.apply1(GateKind::U1(-lambda / 2.0), target);
    c.cx(control, target);
    c.apply1(GateKind::U1(lambda / 2.0), target);
}

fn bv(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Circuit> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::InvalidSpec("bv requires n >= 2".into()));
    }
    let hidden: Vec<bool> = match &spec.bv_hidden {
        Some(s) => {
            if s.len() != n - 1 || !s.chars().all(|ch| ch == '0' || ch == '1') {
                return Err(Error::InvalidSpec(format!(
                    "bv hidden string must be {} binary digits",
                    n - 1
                )));
            }
            s.chars().map(|ch| ch == '1').collect()
        }
        None => (0..n - 1).map(|_| rng.gen_bool(0.5)).collect(),
    };
    let target = n - 1;
    let mut c = Circuit::new(n);
    c.x(target);
    for q in 0..n {
        c.h(q);
    }
    for (q, &bit) in hidden.iter().enumerate() {
        if bit {
            c.cx(q, target);
        }
    }
    for q in 0..n {
        c.h(q);
    }
    Ok(c)
}

/// The hidden string `gen` uses for a BV spec.
pub fn bv_hidden_string(spec: &GenSpec) -> Result<String> {
    let c = gen(&GenSpec {
        family: Family::Bv,
        ..spec.clone()
    })?;
    let target = spec.n - 1;
    let mut bits = vec!['0'; spec.n - 1];
    for g in c.gates() {
        if g.kind == GateKind::CX && g.qubits()[1] == target {
            bits[g.qubits()[0]] = '1';
        }
    }
    Ok(bits.into_iter().collect())
}

fn hwea(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Circuit> {
    let n = spec.n;
    let layers = spec.hwea_layers.unwrap_or(1);
    let mut c = Circuit::new(n);
    let mut rotations = |c: &mut Circuit| {
        for q in 0..n {
            c.apply1(GateKind::RY(rng.gen_range(0.0..2.0 * PI)), q);
            c.apply1(GateKind::RZ(rng.gen_range(0.0..2.0 * PI)), q);
        }
    };
    for _ in 0..layers {
        rotations(&mut c);
        for q in 0..n.saturating_sub(1) {
            c.cx(q, q + 1);
        }
    }
    rotations(&mut c);
    Ok(c)
}

/// Most square `rows x cols = n` with `rows <= cols <= 2 rows`.
pub fn default_grid(n: usize) -> Result<(usize, usize)> {
    let mut rows = (n as f64).sqrt().floor() as usize;
    while rows > 0 && !n.is_multiple_of(rows) {
        rows -= 1;
    }
    let cols = n / rows.max(1);
    if rows == 0 || cols > 2 * rows {
        return Err(Error::InvalidSpec(format!(
            "supremacy needs a near-square grid; {n} has none"
        )));
    }
    Ok((rows, cols))
}

fn supremacy(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Circuit> {
    let (rows, cols) = match spec.grid {
        Some(g) => g,
        None => default_grid(spec.n)?,
    };
    if rows * cols != spec.n {
        return Err(Error::InvalidSpec(format!(
            "grid {rows}x{cols} does not have {} qubits",
            spec.n
        )));
    }
    if rows.max(cols) > 2 * rows.min(cols) {
        return Err(Error::InvalidSpec(format!(
            "grid {rows}x{cols} is not near-square"
        )));
    }
    let depth = spec.depth.unwrap_or(8);
    let q = |r: usize, col: usize| r * cols + col;
    let mut c = Circuit::new(spec.n);
    for i in 0..spec.n {
        c.h(i);
    }
    let pool = [
        GateKind::T,
        GateKind::RX(PI / 2.0),
        GateKind::RY(PI / 2.0),
    ];
    let mut last: Vec<Option<GateKind>> = vec![None; spec.n];
    for layer in 0..depth {
        let mut pairs = Vec::new();
        match layer % 4 {
            0 | 2 => {
                let parity = (layer % 4) / 2;
                for r in 0..rows {
                    for col in (parity..cols.saturating_sub(1)).step_by(2) {
                        pairs.push((q(r, col), q(r, col + 1)));
                    }
                }
            }
            _ => {
                let parity = (layer % 4) / 2;
                for r in (parity..rows.saturating_sub(1)).step_by(2) {
                    for col in 0..cols {
                        pairs.push((q(r, col), q(r + 1, col)));
                    }
                }
            }
        }
        let mut busy = vec![false; spec.n];
        for &(a, b) in &pairs {
            c.cz(a, b);
            busy[a] = true;
            busy[b] = true;
        }
        for i in 0..spec.n {
            if busy[i] {
                continue;
            }
            let choices: Vec<GateKind> = pool
                .iter()
                .copied()
                .filter(|g| Some(*g) != last[i])
                .collect();
            let g = *choices.choose(rng).expect("non-empty gate pool");
            c.apply1(g, i);
            last[i] = Some(g);
        }
    }
    Ok(c)
}
