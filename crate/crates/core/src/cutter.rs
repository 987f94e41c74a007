//! Wire-cut search and circuit fragmentation.
//!
//! A cut severs one wire between two consecutive gates. Each wire is thereby
//! split into *segments*; a segment that ends at a cut is measured out in its
//! fragment (upstream role) and a segment that starts at a cut is a freshly
//! initialised qubit (downstream role). Segments joined by a two-qubit gate
//! must share a fragment, so the connected components of the segment graph
//! are the atoms that get packed into fragments.
//!
//! The search is a branch and bound over fragment assignments of the
//! two-qubit gates in program order. Single-qubit gates ride along with the
//! segment they sit in, so cuts only ever land right after a two-qubit gate.
//! Assigning a gate to a fragment other than its predecessor's on a wire
//! cuts that wire, and both the cut count and every fragment's width can only
//! grow as more gates are placed, which makes both limits exact pruning
//! bounds. Cut budgets are tried in increasing order; within the first
//! feasible budget the smallest maximum fragment width wins, then the
//! lexicographically smallest cut list.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{dag_edges, Circuit, DagEdge};
use crate::error::{Error, Result};

/// One severed wire edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CutPoint {
    pub wire: usize,
    pub edge: DagEdge,
}

impl CutPoint {
    pub fn new(edge: DagEdge) -> CutPoint {
        CutPoint {
            wire: edge.wire,
            edge,
        }
    }

    fn order_key(&self) -> (usize, usize, usize) {
        (self.edge.from_gate, self.edge.to_gate, self.wire)
    }
}

/// A fragment of the source circuit plus its cut roles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubcircuitSpec {
    pub fragment: Circuit,
    /// Cut indices this fragment measures, ascending.
    pub upstream_cuts: Vec<usize>,
    /// Fragment qubit measured for each entry of `upstream_cuts`.
    pub upstream_qubits: Vec<usize>,
    /// Cut indices this fragment re-initialises, ascending.
    pub downstream_cuts: Vec<usize>,
    /// Fresh fragment qubit for each entry of `downstream_cuts`.
    pub downstream_qubits: Vec<usize>,
    /// Fragment qubits that survive into the uncut output, ascending.
    pub effective_qubits: Vec<usize>,
    /// `output_map[k]` is the source qubit of `effective_qubits[k]`.
    pub output_map: Vec<usize>,
    /// Source-circuit index of every fragment gate.
    pub source_gates: Vec<usize>,
}

impl SubcircuitSpec {
    pub fn width(&self) -> usize {
        self.fragment.width()
    }

    pub fn num_effective(&self) -> usize {
        self.effective_qubits.len()
    }

    /// Number of variants the evaluator must simulate: `3^up * 4^down`.
    pub fn variant_count(&self) -> usize {
        3usize.pow(self.upstream_cuts.len() as u32) * 4usize.pow(self.downstream_cuts.len() as u32)
    }

    /// All cut indices incident on this fragment, ascending.
    pub fn incident_cuts(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .upstream_cuts
            .iter()
            .chain(&self.downstream_cuts)
            .copied()
            .collect();
        all.sort_unstable();
        all
    }
}

/// Cut locations plus the resulting fragments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutPlan {
    pub source_width: usize,
    pub cuts: Vec<CutPoint>,
    pub subcircuits: Vec<SubcircuitSpec>,
    /// Postprocessing cost `4^K`.
    pub objective_cost: f64,
}

impl CutPlan {
    pub fn num_cuts(&self) -> usize {
        self.cuts.len()
    }

    pub fn widths(&self) -> Vec<usize> {
        self.subcircuits.iter().map(SubcircuitSpec::width).collect()
    }

    pub fn effective_counts(&self) -> Vec<usize> {
        self.subcircuits.iter().map(SubcircuitSpec::num_effective).collect()
    }

    pub fn max_width(&self) -> usize {
        self.widths().into_iter().max().unwrap_or(0)
    }

    pub fn total_variants(&self) -> usize {
        self.subcircuits.iter().map(SubcircuitSpec::variant_count).sum()
    }

    /// Source width plus number of cuts equals the summed fragment widths.
    pub fn width_identity_holds(&self) -> bool {
        self.source_width + self.cuts.len() == self.widths().iter().sum::<usize>()
    }
}

/// Search limits for [`find_cuts`].
#[derive(Clone, Copy, Debug)]
pub struct CutConstraints {
    pub max_width: usize,
    pub max_subcircuits: usize,
    pub max_cuts: usize,
    /// Partial plans the search may explore per cut budget.
    pub node_limit: u64,
}

/// Finds a minimum-cut plan under the given limits.
pub fn find_cuts(
    c: &Circuit,
    max_width: usize,
    max_subcircuits: usize,
    max_cuts: usize,
) -> Result<CutPlan> {
    find_cuts_with(
        c,
        CutConstraints {
            max_width,
            max_subcircuits,
            max_cuts,
            node_limit: DEFAULT_NODE_LIMIT,
        },
    )
}

pub fn find_cuts_with(c: &Circuit, limits: CutConstraints) -> Result<CutPlan> {
    let infeasible = || Error::InfeasibleCut {
        max_width: limits.max_width,
        max_subcircuits: limits.max_subcircuits,
        max_cuts: limits.max_cuts,
    };
    if limits.max_width == 0 || limits.max_subcircuits == 0 {
        return Err(infeasible());
    }
    if c.width() <= limits.max_width {
        return plan_from_groups(c, Vec::new(), &vec![vec![0]; c.width()]);
    }
    let graph = CutGraph::new(c);
    for k in 0..=limits.max_cuts {
        if c.width() + k > limits.max_subcircuits * limits.max_width {
            continue;
        }
        let mut search = Search {
            graph: &graph,
            max_groups: limits.max_subcircuits,
            budget: k,
            width_limit: limits.max_width,
            group: vec![usize::MAX; graph.nodes.len()],
            widths: Vec::new(),
            cuts: 0,
            best: None,
            explored: 0,
            node_limit: limits.node_limit,
        };
        if !search.dfs(0) {
            return Err(Error::CutSearchLimit {
                explored: search.explored,
                cuts: k,
            });
        }
        if let Some(found) = search.best {
            return plan_from_found(c, &graph, found, limits.max_subcircuits);
        }
        if k >= graph.nodes.len() * 2 {
            break;
        }
    }
    Err(infeasible())
}

fn plan_from_found(
    c: &Circuit,
    graph: &CutGraph,
    found: Found,
    max_groups: usize,
) -> Result<CutPlan> {
    let cuts: Vec<CutPoint> = found
        .cut_keys
        .iter()
        .map(|&(from_gate, to_gate, wire)| {
            CutPoint::new(DagEdge {
                from_gate,
                to_gate,
                wire,
            })
        })
        .collect();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); c.width()];
    for (i, node) in graph.nodes.iter().enumerate() {
        for slot in 0..2 {
            let w = node.wires[slot];
            let starts_segment = match node.preds[slot] {
                None => true,
                Some(p) => found.group[p] != found.group[i],
            };
            if starts_segment {
                groups[w].push(found.group[i]);
            }
        }
    }
    let mut widths = found.widths;
    for &w in &graph.isolated {
        let g = if widths.len() < max_groups {
            widths.push(0);
            widths.len() - 1
        } else {
            widths.iter().enumerate().min_by_key(|&(i, w)| (*w, i)).unwrap().0
        };
        widths[g] += 1;
        groups[w].push(g);
    }
    // fragments numbered by first appearance in (wire, segment) order
    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    for g in groups.iter_mut().flatten() {
        let next = renumber.len();
        *g = *renumber.entry(*g).or_insert(next);
    }
    plan_from_groups(c, cuts, &groups)
}

/// Splits `c` at `cuts`. Every connected piece that carries a cut becomes its
/// own fragment; pieces untouched by any cut join the first fragment.
pub fn apply_cuts(c: &Circuit, cuts: &[CutPoint]) -> Result<Vec<SubcircuitSpec>> {
    Ok(plan_with_cuts(c, cuts)?.subcircuits)
}

/// Same split as [`apply_cuts`], returned as a full plan. Cuts are indexed
/// in `(from_gate, to_gate, wire)` order.
pub fn plan_with_cuts(c: &Circuit, cuts: &[CutPoint]) -> Result<CutPlan> {
    let cuts = sorted_cuts(c, cuts)?;
    let seg = Segments::new(c, &cuts);
    let comp = seg.components(c);
    let mut touched = vec![false; seg.count];
    for (w, list) in seg.cut_positions.iter().enumerate() {
        for s in 0..list.len() {
            touched[comp[seg.id(w, s)]] = true;
            touched[comp[seg.id(w, s + 1)]] = true;
        }
    }
    // fragments numbered by first appearance in (wire, segment) order
    let mut numbering: BTreeMap<usize, usize> = BTreeMap::new();
    let mut free_slot = None;
    let mut groups = vec![Vec::new(); c.width()];
    for w in 0..c.width() {
        for s in 0..=seg.cut_positions[w].len() {
            let root = comp[seg.id(w, s)];
            let key = if touched[root] || cuts.is_empty() {
                root
            } else {
                *free_slot.get_or_insert(root)
            };
            let next = numbering.len();
            let f = *numbering.entry(key).or_insert(next);
            groups[w].push(f);
        }
    }
    // untouched pieces fold into fragment 0
    if let Some(free) = free_slot {
        let free_id = numbering[&free];
        if !cuts.is_empty() && numbering.values().any(|&v| v != free_id) {
            for g in groups.iter_mut().flatten() {
                if *g == free_id {
                    *g = 0;
                } else if *g > free_id {
                    *g -= 1;
                }
            }
        }
    }
    plan_from_groups(c, cuts, &groups)
}

/// Splits `c` at `cuts` with an explicit fragment for every segment:
/// `groups[wire][segment]` is a fragment id in `0..F`.
pub fn apply_cuts_grouped(
    c: &Circuit,
    cuts: &[CutPoint],
    groups: &[Vec<usize>],
) -> Result<Vec<SubcircuitSpec>> {
    let cuts = sorted_cuts(c, cuts)?;
    Ok(plan_from_groups(c, cuts, groups)?.subcircuits)
}

fn sorted_cuts(c: &Circuit, cuts: &[CutPoint]) -> Result<Vec<CutPoint>> {
    let edges: std::collections::HashSet<DagEdge> = dag_edges(c).into_iter().collect();
    let mut sorted = cuts.to_vec();
    sorted.sort_by_key(CutPoint::order_key);
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidCuts(format!("duplicate cut {:?}", w[0].edge)));
        }
    }
    for cut in &sorted {
        if cut.wire != cut.edge.wire || !edges.contains(&cut.edge) {
            return Err(Error::InvalidCuts(format!(
                "{:?} is not an edge of the circuit DAG",
                cut.edge
            )));
        }
    }
    Ok(sorted)
}

/// Wire segments induced by a cut set.
struct Segments {
    /// Per wire, the cut indices on it in wire order.
    cut_positions: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    count: usize,
    /// Per gate, the segment id of each operand.
    gate_segments: Vec<[usize; 2]>,
}

impl Segments {
    fn new(c: &Circuit, cuts: &[CutPoint]) -> Segments {
        let mut cut_positions: Vec<Vec<usize>> = vec![Vec::new(); c.width()];
        let mut by_from: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (k, cut) in cuts.iter().enumerate() {
            by_from.insert((cut.wire, cut.edge.from_gate), k);
        }
        let mut offsets = Vec::with_capacity(c.width());
        let mut current = vec![0usize; c.width()];
        let mut gate_segments = Vec::with_capacity(c.len());
        // count segments first
        let mut seg_counts = vec![1usize; c.width()];
        for cut in cuts {
            seg_counts[cut.wire] += 1;
        }
        let mut total = 0;
        for &n in &seg_counts {
            offsets.push(total);
            total += n;
        }
        for (i, g) in c.gates().iter().enumerate() {
            let mut ids = [usize::MAX; 2];
            for (slot, &q) in g.qubits().iter().enumerate() {
                ids[slot] = offsets[q] + current[q];
                if let Some(&k) = by_from.get(&(q, i)) {
                    cut_positions[q].push(k);
                    current[q] += 1;
                }
            }
            gate_segments.push(ids);
        }
        Segments {
            cut_positions,
            offsets,
            count: total,
            gate_segments,
        }
    }

    fn id(&self, wire: usize, seg: usize) -> usize {
        self.offsets[wire] + seg
    }

    /// Union-find root of every segment.
    fn components(&self, c: &Circuit) -> Vec<usize> {
        let mut uf = UnionFind::new(self.count);
        for (g, ids) in c.gates().iter().zip(&self.gate_segments) {
            if g.kind.arity() == 2 {
                uf.union(ids[0], ids[1]);
            }
        }
        (0..self.count).map(|s| uf.find(s)).collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so roots are deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn plan_from_groups(c: &Circuit, cuts: Vec<CutPoint>, groups: &[Vec<usize>]) -> Result<CutPlan> {
    let seg = Segments::new(c, &cuts);
    if groups.len() != c.width() {
        return Err(Error::InvalidCuts("grouping does not cover every wire".into()));
    }
    for (w, g) in groups.iter().enumerate() {
        if g.len() != seg.cut_positions[w].len() + 1 {
            return Err(Error::InvalidCuts(format!(
                "wire {w} has {} segments but {} group entries",
                seg.cut_positions[w].len() + 1,
                g.len()
            )));
        }
    }
    let num_frags = groups.iter().flatten().max().map_or(0, |m| m + 1);
    if num_frags == 0 {
        // zero-width circuit
        return Ok(CutPlan {
            source_width: 0,
            cuts,
            subcircuits: vec![SubcircuitSpec {
                fragment: Circuit::new(0),
                upstream_cuts: vec![],
                upstream_qubits: vec![],
                downstream_cuts: vec![],
                downstream_qubits: vec![],
                effective_qubits: vec![],
                output_map: vec![],
                source_gates: (0..c.len()).collect(),
            }],
            objective_cost: 1.0,
        });
    }
    let mut frag_of = vec![0usize; seg.count];
    for (w, g) in groups.iter().enumerate() {
        for (s, &f) in g.iter().enumerate() {
            frag_of[seg.id(w, s)] = f;
        }
    }
    for (w, list) in seg.cut_positions.iter().enumerate() {
        for (s, &k) in list.iter().enumerate() {
            if frag_of[seg.id(w, s)] == frag_of[seg.id(w, s + 1)] {
                return Err(Error::InvalidCuts(format!(
                    "cut {k} on wire {w} does not separate the circuit"
                )));
            }
        }
    }

    struct Builder {
        // (wire, segment) in fragment qubit order
        qubits: Vec<(usize, usize)>,
        gates: Vec<usize>,
    }
    let mut builders: Vec<Builder> = (0..num_frags)
        .map(|_| Builder {
            qubits: Vec::new(),
            gates: Vec::new(),
        })
        .collect();
    // original qubits first, in wire order
    for w in 0..c.width() {
        builders[groups[w][0]].qubits.push((w, 0));
    }
    // then fresh qubits, in cut order
    let mut fresh: Vec<(usize, usize, usize)> = Vec::new();
    for (w, list) in seg.cut_positions.iter().enumerate() {
        for (s, &k) in list.iter().enumerate() {
            fresh.push((k, w, s + 1));
        }
    }
    fresh.sort_unstable();
    for &(_, w, s) in &fresh {
        builders[groups[w][s]].qubits.push((w, s));
    }
    for (i, g) in c.gates().iter().enumerate() {
        let ids = seg.gate_segments[i];
        let f = frag_of[ids[0]];
        if g.kind.arity() == 2 && frag_of[ids[1]] != f {
            return Err(Error::InvalidCuts(format!(
                "gate {i} straddles fragments {f} and {}",
                frag_of[ids[1]]
            )));
        }
        builders[f].gates.push(i);
    }

    let mut subcircuits = Vec::with_capacity(num_frags);
    for (f, b) in builders.into_iter().enumerate() {
        if b.qubits.is_empty() {
            return Err(Error::InvalidCuts(format!("fragment {f} is empty")));
        }
        let local: BTreeMap<(usize, usize), usize> =
            b.qubits.iter().enumerate().map(|(i, &ws)| (ws, i)).collect();
        let mut fragment = Circuit::new(b.qubits.len());
        for &i in &b.gates {
            let g = c.gates()[i];
            let ids = seg.gate_segments[i];
            let mapped = match g.qubits() {
                [q] => {
                    let s = ids[0] - seg.offsets[*q];
                    g.remapped(|_| local[&(*q, s)])
                }
                [a, bq] => {
                    let (sa, sb) = (ids[0] - seg.offsets[*a], ids[1] - seg.offsets[*bq]);
                    g.remapped(|q| if q == *a { local[&(*a, sa)] } else { local[&(*bq, sb)] })
                }
                _ => unreachable!(),
            };
            fragment.push(mapped);
        }
        let mut upstream = Vec::new();
        let mut downstream = Vec::new();
        let mut effective = Vec::new();
        for (fq, &(w, s)) in b.qubits.iter().enumerate() {
            let list = &seg.cut_positions[w];
            if s < list.len() {
                upstream.push((list[s], fq));
            } else {
                effective.push((fq, w));
            }
            if s > 0 {
                downstream.push((list[s - 1], fq));
            }
        }
        upstream.sort_unstable();
        downstream.sort_unstable();
        subcircuits.push(SubcircuitSpec {
            fragment,
            upstream_cuts: upstream.iter().map(|u| u.0).collect(),
            upstream_qubits: upstream.iter().map(|u| u.1).collect(),
            downstream_cuts: downstream.iter().map(|d| d.0).collect(),
            downstream_qubits: downstream.iter().map(|d| d.1).collect(),
            effective_qubits: effective.iter().map(|e| e.0).collect(),
            output_map: effective.iter().map(|e| e.1).collect(),
            source_gates: b.gates,
        });
    }
    let k = cuts.len();
    Ok(CutPlan {
        source_width: c.width(),
        cuts,
        subcircuits,
        objective_cost: 4f64.powi(k as i32),
    })
}

/// A two-qubit gate in the search, with its predecessors on each wire.
struct Node {
    wires: [usize; 2],
    preds: [Option<usize>; 2],
    /// Ordering key of the wire edge leading into this gate from `preds[i]`.
    edge_keys: [(usize, usize, usize); 2],
}

/// Two-qubit gates in program order plus the wires that have none.
struct CutGraph {
    nodes: Vec<Node>,
    /// Wires without two-qubit gates; each is a width-1 piece.
    isolated: Vec<usize>,
}

impl CutGraph {
    fn new(c: &Circuit) -> CutGraph {
        let mut last_node: Vec<Option<usize>> = vec![None; c.width()];
        let mut last_gate: Vec<Option<usize>> = vec![None; c.width()];
        let mut pending: Vec<Option<DagEdge>> = vec![None; c.width()];
        let mut nodes = Vec::new();
        for (i, g) in c.gates().iter().enumerate() {
            for &q in g.qubits() {
                // the edge leaving the last two-qubit gate on q
                if let (Some(from), None) = (last_gate[q], pending[q]) {
                    if last_node[q].is_some() {
                        pending[q] = Some(DagEdge {
                            from_gate: from,
                            to_gate: i,
                            wire: q,
                        });
                    }
                }
            }
            if g.kind.arity() == 2 {
                let ops = g.qubits();
                let wires = [ops[0], ops[1]];
                let preds = [last_node[wires[0]], last_node[wires[1]]];
                let edges = [pending[wires[0]], pending[wires[1]]];
                let key = |e: Option<DagEdge>| e.map_or((0, 0, 0), |e| (e.from_gate, e.to_gate, e.wire));
                nodes.push(Node {
                    wires,
                    preds,
                    edge_keys: [key(edges[0]), key(edges[1])],
                });
                for &q in &wires {
                    last_node[q] = Some(nodes.len() - 1);
                    pending[q] = None;
                }
            }
            for &q in g.qubits() {
                last_gate[q] = Some(i);
            }
        }
        let isolated = (0..c.width()).filter(|&q| last_node[q].is_none()).collect();
        CutGraph { nodes, isolated }
    }
}

/// Best assignment found at one cut budget.
struct Found {
    max_width: usize,
    cut_keys: Vec<(usize, usize, usize)>,
    group: Vec<usize>,
    widths: Vec<usize>,
}

struct Search<'a> {
    graph: &'a CutGraph,
    max_groups: usize,
    budget: usize,
    width_limit: usize,
    group: Vec<usize>,
    widths: Vec<usize>,
    cuts: usize,
    best: Option<Found>,
    explored: u64,
    node_limit: u64,
}

impl Search<'_> {
    /// Smallest achievable maximum width once the isolated wires are added
    /// one at a time to the narrowest fragment.
    fn fill_isolated(&self) -> usize {
        let mut widths = self.widths.clone();
        for _ in &self.graph.isolated {
            if widths.len() < self.max_groups {
                widths.push(1);
            } else {
                let min = widths.iter().enumerate().min_by_key(|&(i, w)| (*w, i)).unwrap().0;
                widths[min] += 1;
            }
            // keep the narrowest-first order stable
            widths.sort_unstable();
        }
        widths.into_iter().max().unwrap_or(0)
    }

    fn leaf(&mut self) {
        let max_width = self.fill_isolated();
        if max_width > self.width_limit {
            return;
        }
        let mut keys = Vec::with_capacity(self.cuts);
        for (i, node) in self.graph.nodes.iter().enumerate() {
            for slot in 0..2 {
                if let Some(p) = node.preds[slot] {
                    if self.group[p] != self.group[i] {
                        keys.push(node.edge_keys[slot]);
                    }
                }
            }
        }
        keys.sort_unstable();
        let better = match &self.best {
            None => true,
            Some(b) => (max_width, &keys) < (b.max_width, &b.cut_keys),
        };
        if better {
            self.width_limit = max_width;
            self.best = Some(Found {
                max_width,
                cut_keys: keys,
                group: self.group.clone(),
                widths: self.widths.clone(),
            });
        }
    }

    fn dfs(&mut self, depth: usize) -> bool {
        self.explored += 1;
        if self.explored > self.node_limit {
            return false;
        }
        if depth == self.graph.nodes.len() {
            self.leaf();
            return true;
        }
        let node = &self.graph.nodes[depth];
        let used = self.widths.len();
        // neighbours' fragments first, then the rest, then a fresh one
        let mut options: Vec<usize> = Vec::with_capacity(used + 1);
        for p in node.preds.iter().flatten() {
            if !options.contains(&self.group[*p]) {
                options.push(self.group[*p]);
            }
        }
        for g in 0..used {
            if !options.contains(&g) {
                options.push(g);
            }
        }
        if used < self.max_groups {
            options.push(used);
        }
        for x in options {
            let mut added_width = 0;
            let mut added_cuts = 0;
            for slot in 0..2 {
                match node.preds[slot] {
                    Some(p) if self.group[p] == x => {}
                    Some(_) => {
                        added_cuts += 1;
                        added_width += 1;
                    }
                    None => added_width += 1,
                }
            }
            if self.cuts + added_cuts > self.budget {
                continue;
            }
            let current = if x < used { self.widths[x] } else { 0 };
            if current + added_width > self.width_limit {
                continue;
            }
            if x == used {
                self.widths.push(added_width);
            } else {
                self.widths[x] += added_width;
            }
            self.cuts += added_cuts;
            self.group[depth] = x;
            let finished = self.dfs(depth + 1);
            self.cuts -= added_cuts;
            if x == used {
                self.widths.pop();
            } else {
                self.widths[x] -= added_width;
            }
            if !finished {
                return false;
            }
        }
        true
    }
}

/// Search effort cap: partial assignments explored per cut budget.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;
