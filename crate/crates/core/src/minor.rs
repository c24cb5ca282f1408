//! Minor containment with certificates, and the intrinsic-linking classifier.
//!
//! `has_minor` reduces `G` by edge contractions and vertex deletions until
//! it has as many vertices as `H`, then looks for `H` as a spanning
//! subgraph. Each reduced vertex carries the set of original vertices merged
//! into it, so a successful search yields branch sets directly. Failed
//! reduced graphs are memoised by canonical form.
//!
//! Pruning, for a connected reduced graph with `n` vertices and `e` edges:
//! every step towards `|V(H)|` vertices loses at least one edge, so
//! `e - n >= |E(H)| - |V(H)|` is necessary. Vertices that cannot matter are
//! reduced without branching: leaves when `H` has minimum degree at least 2,
//! and degree-2 vertices (contracted into a neighbour) when it has minimum
//! degree at least 3.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{canonical_key_of_masks, CanonicalForm, EdgeId, GraphError, MultiGraph, VertexId};
use crate::moves::petersen_family;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const MAX_SEARCH_VERTICES: usize = 64;
const MEMO_VERTICES: usize = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("target graph must be connected")]
    DisconnectedTarget,
    #[error("component with {0} vertices exceeds the {MAX_SEARCH_VERTICES}-vertex search limit")]
    TooLarge(usize),
    #[error("graph is not intrinsically linked")]
    NotLinked,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Witness that `H` is a minor of `G`: disjoint connected branch sets in
/// `G` for each vertex of `H`, and a distinct `G`-edge joining the branch
/// sets of each `H`-edge.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MinorModel {
    pub branch_sets: BTreeMap<VertexId, Vec<VertexId>>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelCheck {
    pub reasons: Vec<String>,
}

impl ModelCheck {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Checks every branch-set and edge-assignment condition of `m`.
pub fn verify_minor_model(g: &MultiGraph, h: &MultiGraph, m: &MinorModel) -> ModelCheck {
    let mut reasons = Vec::new();
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();

    for hv in m.branch_sets.keys() {
        if !h.contains_vertex(*hv) {
            reasons.push(format!("branch set for unknown H-vertex {hv}"));
        }
    }
    for hv in h.vertices() {
        let Some(set) = m.branch_sets.get(&hv) else {
            reasons.push(format!("H-vertex {hv} has no branch set"));
            continue;
        };
        if set.is_empty() {
            reasons.push(format!("branch set of H-vertex {hv} is empty"));
            continue;
        }
        for &gv in set {
            if !g.contains_vertex(gv) {
                reasons.push(format!("branch set of {hv} contains unknown G-vertex {gv}"));
            } else if let Some(prev) = owner.insert(gv, hv) {
                if prev != hv {
                    reasons.push(format!("G-vertex {gv} lies in branch sets of {prev} and {hv}"));
                }
            }
        }
        if !induces_connected(g, set) {
            reasons.push(format!("branch set of H-vertex {hv} is not connected"));
        }
    }

    let mut used = BTreeSet::new();
    for he in m.edge_map.keys() {
        if h.edge(*he).is_none() {
            reasons.push(format!("edge map mentions unknown H-edge {he}"));
        }
    }
    for he in h.edges() {
        let Some(&ge) = m.edge_map.get(&he.id) else {
            reasons.push(format!("H-edge {} is unassigned", he.id));
            continue;
        };
        if !used.insert(ge) {
            reasons.push(format!("G-edge {ge} is assigned twice"));
        }
        let Some(e) = g.edge(ge) else {
            reasons.push(format!("H-edge {} maps to unknown G-edge {ge}", he.id));
            continue;
        };
        let (a, b) = (owner.get(&e.u).copied(), owner.get(&e.v).copied());
        let joins = (a == Some(he.u) && b == Some(he.v)) || (a == Some(he.v) && b == Some(he.u));
        if !joins || e.is_loop() {
            reasons.push(format!(
                "G-edge {ge} does not join the branch sets of {} and {}",
                he.u, he.v
            ));
        }
    }
    ModelCheck { reasons }
}

fn induces_connected(g: &MultiGraph, set: &[VertexId]) -> bool {
    let members: BTreeSet<VertexId> = set.iter().copied().collect();
    let Some(&start) = members.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for e in g.incident(x) {
            if let Some(y) = e.other(x) {
                if members.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen.len() == members.len()
}

/// Result of a single minor search, with the number of nodes visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSearch {
    pub outcome: Result<Option<MinorModel>, MinorError>,
    pub nodes: u64,
}

/// A model of `h` in `g` if one exists. `Ok(None)` is a definitive answer;
/// running out of `budget` search nodes is an error.
pub fn has_minor(g: &MultiGraph, h: &MultiGraph, budget: u64) -> Result<Option<MinorModel>, MinorError> {
    search_minor(g, h, budget).outcome
}

pub fn search_minor(g: &MultiGraph, h: &MultiGraph, budget: u64) -> MinorSearch {
    let mut nodes = 0;
    let outcome = run_search(g, h, budget, &mut nodes);
    MinorSearch { outcome, nodes }
}

fn run_search(
    g: &MultiGraph,
    h: &MultiGraph,
    budget: u64,
    nodes: &mut u64,
) -> Result<Option<MinorModel>, MinorError> {
    let h = h.simplified();
    let g = g.simplified();
    if h.vertex_count() == 0 {
        return Ok(Some(MinorModel::default()));
    }
    if !h.is_connected() {
        return Err(MinorError::DisconnectedTarget);
    }
    if h.vertex_count() > MAX_SEARCH_VERTICES {
        return Err(MinorError::TooLarge(h.vertex_count()));
    }
    let target = Target::new(&h);
    for comp in g.components() {
        if comp.vertex_count() < target.n || comp.edge_count() < target.m {
            continue;
        }
        if comp.vertex_count() > MAX_SEARCH_VERTICES {
            return Err(MinorError::TooLarge(comp.vertex_count()));
        }
        let mut search = Search { target: &target, budget, nodes: *nodes, failed: HashSet::new() };
        let found = search.solve(State::from_graph(&comp), None);
        *nodes = search.nodes;
        if let Some(model) = found? {
            return Ok(Some(model));
        }
    }
    Ok(None)
}

struct Target {
    n: usize,
    m: usize,
    adj: Vec<u64>,
    degree: Vec<u32>,
    min_degree: u32,
    order: Vec<usize>,
    ids: Vec<VertexId>,
    edges: Vec<(usize, usize, EdgeId)>,
}

impl Target {
    fn new(h: &MultiGraph) -> Self {
        let ids: Vec<VertexId> = h.vertices().collect();
        let idx = |v: VertexId| ids.binary_search(&v).unwrap();
        let n = ids.len();
        let mut adj = vec![0u64; n];
        let mut edges = Vec::new();
        for e in h.edges() {
            let (a, b) = (idx(e.u), idx(e.v));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            edges.push((a, b, e.id));
        }
        let degree: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
        let min_degree = if n < 2 { 0 } else { degree.iter().copied().min().unwrap_or(0) };

        // Most constrained first: each next vertex has the most already
        // ordered neighbours, ties broken by degree.
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| ((adj[v] & placed).count_ones(), degree[v], std::cmp::Reverse(v)))
                .unwrap();
            order.push(next);
            placed |= 1 << next;
        }
        Target { n, m: edges.len(), adj, degree, min_degree, order, ids, edges }
    }

    fn excess(&self) -> i64 {
        self.m as i64 - self.n as i64
    }
}

/// A reduced graph: vertex `i` stands for the original vertices
/// `branch[i]`; `rep[i * n + j]` is an original edge realising `i ~ j`.
#[derive(Clone)]
struct State {
    adj: Vec<u64>,
    branch: Vec<Vec<VertexId>>,
    rep: Vec<Option<EdgeId>>,
}

impl State {
    fn from_graph(g: &MultiGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let n = ids.len();
        let idx = |v: VertexId| ids.binary_search(&v).unwrap();
        let mut adj = vec![0u64; n];
        let mut rep = vec![None; n * n];
        for e in g.edges() {
            let (a, b) = (idx(e.u), idx(e.v));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            rep[a * n + b] = Some(e.id);
            rep[b * n + a] = Some(e.id);
        }
        State { adj, branch: ids.into_iter().map(|v| vec![v]).collect(), rep }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    fn key(&self) -> Option<CanonicalForm> {
        (self.n() <= MEMO_VERTICES).then(|| canonical_key_of_masks(&self.adj))
    }

    /// Keeps only the vertices in `keep` (a bitmask), preserving order.
    fn restrict(&self, keep: u64) -> State {
        let n = self.n();
        let kept: Vec<usize> = (0..n).filter(|&v| keep >> v & 1 == 1).collect();
        let k = kept.len();
        let mut adj = vec![0u64; k];
        let mut rep = vec![None; k * k];
        for (a, &va) in kept.iter().enumerate() {
            for (b, &vb) in kept.iter().enumerate() {
                if self.adj[va] >> vb & 1 == 1 {
                    adj[a] |= 1 << b;
                    rep[a * k + b] = self.rep[va * n + vb];
                }
            }
        }
        State {
            adj,
            branch: kept.iter().map(|&v| self.branch[v].clone()).collect(),
            rep,
        }
    }

    fn without(&self, v: usize) -> State {
        let all = if self.n() == 64 { u64::MAX } else { (1u64 << self.n()) - 1 };
        self.restrict(all & !(1 << v))
    }

    /// Merges `j` into `i`.
    fn contract(&self, i: usize, j: usize) -> State {
        let n = self.n();
        let mut s = self.clone();
        let merged = (s.adj[i] | s.adj[j]) & !(1 << i) & !(1 << j);
        s.adj[i] = merged;
        for k in 0..n {
            if k != i && k != j {
                if merged >> k & 1 == 1 {
                    s.adj[k] |= 1 << i;
                }
                let best = match (s.rep[i * n + k], s.rep[j * n + k]) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                s.rep[i * n + k] = best;
                s.rep[k * n + i] = best;
            }
        }
        let moved = std::mem::take(&mut s.branch[j]);
        s.branch[i].extend(moved);
        s.without(j)
    }

    fn components(&self) -> Vec<u64> {
        let n = self.n();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }
}

struct Search<'a> {
    target: &'a Target,
    budget: u64,
    nodes: u64,
    failed: HashSet<CanonicalForm>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), MinorError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(MinorError::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    fn viable(&self, s: &State) -> bool {
        let (n, e) = (s.n(), s.edge_count());
        n >= self.target.n
            && e >= self.target.m
            && e as i64 - n as i64 >= self.target.excess()
    }

    /// Applies the non-branching reductions until none applies.
    fn reduce(&self, mut s: State) -> State {
        let t = self.target;
        loop {
            let n = s.n();
            if n <= t.n {
                return s;
            }
            let pick = (0..n).find_map(|v| match s.degree(v) {
                0 if t.min_degree >= 1 => Some((v, None)),
                1 if t.min_degree >= 2 => Some((v, None)),
                2 if t.min_degree >= 3 => Some((v, Some(s.adj[v].trailing_zeros() as usize))),
                _ => None,
            });
            match pick {
                None => return s,
                Some((v, None)) => s = s.without(v),
                Some((v, Some(u))) => s = s.contract(u.min(v), u.max(v)),
            }
        }
    }

    fn solve(&mut self, state: State, key: Option<CanonicalForm>) -> Result<Option<MinorModel>, MinorError> {
        self.tick()?;
        let before = state.n();
        let state = self.reduce(state);
        let key = if state.n() == before { key.or_else(|| state.key()) } else { state.key() };
        if key.as_ref().is_some_and(|k| self.failed.contains(k)) {
            return Ok(None);
        }

        let comps = state.components();
        let found = if comps.len() > 1 {
            let mut found = None;
            for comp in comps {
                let part = state.restrict(comp);
                if self.viable(&part) {
                    let k = part.key();
                    if let Some(m) = self.solve(part, k)? {
                        found = Some(m);
                        break;
                    }
                }
            }
            found
        } else if !self.viable(&state) {
            None
        } else if state.n() == self.target.n {
            self.spanning(&state)?
        } else {
            self.branch(&state)?
        };

        if found.is_none() {
            if let Some(k) = key {
                self.failed.insert(k);
            }
        }
        Ok(found)
    }

    fn branch(&mut self, state: &State) -> Result<Option<MinorModel>, MinorError> {
        let n = state.n();
        let mut children = Vec::new();
        for i in 0..n {
            let mut later = state.adj[i] & !((2u64 << i).wrapping_sub(1));
            while later != 0 {
                let j = later.trailing_zeros() as usize;
                later &= later - 1;
                children.push((i, Some(j)));
            }
        }
        children.extend((0..n).map(|v| (v, None)));

        let mut seen = HashSet::new();
        for (i, j) in children {
            let child = match j {
                Some(j) => state.contract(i, j),
                None => state.without(i),
            };
            let key = child.key();
            if let Some(k) = &key {
                if self.failed.contains(k) || !seen.insert(k.clone()) {
                    continue;
                }
            }
            if let Some(m) = self.solve(child, key)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Looks for a bijection from the target onto `state` that maps every
    /// target edge onto an edge.
    fn spanning(&mut self, state: &State) -> Result<Option<MinorModel>, MinorError> {
        let t = self.target;
        let mut have: Vec<u32> = (0..state.n()).map(|v| state.degree(v)).collect();
        let mut need = t.degree.clone();
        have.sort_unstable_by(|a, b| b.cmp(a));
        need.sort_unstable_by(|a, b| b.cmp(a));
        if have.iter().zip(&need).any(|(h, n)| h < n) {
            return Ok(None);
        }
        let mut image = vec![usize::MAX; t.n];
        if !self.assign(state, 0, 0, &mut image)? {
            return Ok(None);
        }
        let n = state.n();
        let branch_sets = (0..t.n)
            .map(|h| {
                let mut set = state.branch[image[h]].clone();
                set.sort_unstable();
                (t.ids[h], set)
            })
            .collect();
        let edge_map = t
            .edges
            .iter()
            .map(|&(a, b, id)| (id, state.rep[image[a] * n + image[b]].expect("mapped edge")))
            .collect();
        Ok(Some(MinorModel { branch_sets, edge_map }))
    }

    fn assign(&mut self, state: &State, depth: usize, used: u64, image: &mut [usize]) -> Result<bool, MinorError> {
        let t = self.target;
        if depth == t.n {
            return Ok(true);
        }
        let h = t.order[depth];
        let mut candidates = !used & if state.n() == 64 { u64::MAX } else { (1u64 << state.n()) - 1 };
        for &prev in &t.order[..depth] {
            if t.adj[h] >> prev & 1 == 1 {
                candidates &= state.adj[image[prev]];
            }
        }
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if state.degree(v) < t.degree[h] {
                continue;
            }
            self.tick()?;
            image[h] = v;
            if self.assign(state, depth + 1, used | 1 << v, image)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Linked,
    Unlinked,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub member: String,
    #[serde(flatten)]
    pub model: MinorModel,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub members_searched: usize,
    pub budget_exhausted: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkVerdict {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

impl LinkVerdict {
    pub fn is_linked(&self) -> bool {
        self.verdict == Verdict::Linked
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifierOptions {
    /// Search nodes allowed per family member.
    pub budget: u64,
    /// Answer "unlinked" for fewer than 15 edges or 6 vertices without searching.
    pub prefilter: bool,
}

impl Default for ClassifierOptions {
    fn default() -> Self {
        ClassifierOptions { budget: DEFAULT_BUDGET, prefilter: true }
    }
}

pub fn is_intrinsically_linked(g: &MultiGraph) -> Result<LinkVerdict, MinorError> {
    classify(g, &ClassifierOptions::default())
}

/// Decides whether `g` has a Petersen-family minor. Members are tried in
/// family order and the first one found is the witness; members whose search
/// ran out of budget make a negative answer `Unknown`.
pub fn classify(g: &MultiGraph, options: &ClassifierOptions) -> Result<LinkVerdict, MinorError> {
    let started = Stopwatch::start();
    let g = g.simplified();
    let mut stats = SearchStats::default();
    if options.prefilter && (g.edge_count() < 15 || g.vertex_count() < 6) {
        stats.elapsed = started.elapsed();
        return Ok(LinkVerdict { verdict: Verdict::Unlinked, witness: None, stats });
    }

    let members = petersen_family().members();
    let run = |graph: &MultiGraph| search_minor(&g, graph, options.budget);
    #[cfg(feature = "parallel")]
    let searches: Vec<MinorSearch> = {
        use rayon::prelude::*;
        members.par_iter().map(|m| run(&m.graph)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let searches: Vec<MinorSearch> = {
        let mut out = Vec::new();
        for m in members {
            let s = run(&m.graph);
            let done = matches!(s.outcome, Ok(Some(_)));
            out.push(s);
            if done {
                break;
            }
        }
        out
    };

    let mut witness = None;
    for (member, search) in members.iter().zip(searches) {
        stats.nodes += search.nodes;
        stats.members_searched += 1;
        match search.outcome {
            Ok(Some(model)) => {
                witness = Some(Witness { member: member.name.clone(), model });
                break;
            }
            Ok(None) => {}
            Err(MinorError::BudgetExhausted(_)) => stats.budget_exhausted.push(member.name.clone()),
            Err(e) => return Err(e),
        }
    }
    let verdict = match (&witness, stats.budget_exhausted.is_empty()) {
        (Some(_), _) => Verdict::Linked,
        (None, true) => Verdict::Unlinked,
        (None, false) => Verdict::Unknown,
    };
    stats.elapsed = started.elapsed();
    Ok(LinkVerdict { verdict, witness, stats })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChildVerdict {
    pub edge: EdgeId,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub deletions: Vec<ChildVerdict>,
    pub contractions: Vec<ChildVerdict>,
    pub minor_minimal: bool,
}

/// Classifies every single-edge deletion and contraction of a linked graph.
/// The graph is minor-minimal iff none of them is linked.
pub fn minor_minimality_report(g: &MultiGraph, options: &ClassifierOptions) -> Result<MinimalityReport, MinorError> {
    let g = g.simplified();
    let verdict = classify(&g, options)?;
    match verdict.verdict {
        Verdict::Linked => {}
        Verdict::Unlinked => return Err(MinorError::NotLinked),
        Verdict::Unknown => return Err(MinorError::BudgetExhausted(options.budget)),
    }
    let child = |h: MultiGraph| -> Result<Verdict, MinorError> {
        match classify(&h, options)?.verdict {
            Verdict::Unknown => Err(MinorError::BudgetExhausted(options.budget)),
            v => Ok(v),
        }
    };
    let mut deletions = Vec::new();
    let mut contractions = Vec::new();
    for e in g.edges() {
        deletions.push(ChildVerdict { edge: e.id, verdict: child(g.delete_edge(e.id)?)? });
        contractions.push(ChildVerdict { edge: e.id, verdict: child(g.contract_edge(e.id, true)?)? });
    }
    let minor_minimal = deletions
        .iter()
        .chain(&contractions)
        .all(|c| c.verdict == Verdict::Unlinked);
    Ok(MinimalityReport { deletions, contractions, minor_minimal })
}

/// Wall-clock timer that degrades to zero where no clock is available.
struct Stopwatch(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Stopwatch {
    fn start() -> Self {
        Stopwatch(
            #[cfg(not(target_arch = "wasm32"))]
            std::time::Instant::now(),
        )
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed();
        #[cfg(target_arch = "wasm32")]
        Duration::ZERO
    }
}
