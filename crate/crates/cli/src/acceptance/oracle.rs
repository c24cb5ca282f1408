//! Reference answers that share no code with the library's search or
//! canonical forms: minor containment on graphs with at most six vertices
//! by closing isomorphism classes under deletion and contraction, and
//! isomorphism by backtracking over vertex maps.

use std::collections::{BTreeSet, HashMap};

use linkless::graph::{MultiGraph, VertexId};

pub const MAX_VERTICES: usize = 6;

/// Isomorphism class of a small graph: the least edge bitmask over all
/// relabelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    n: u8,
    bits: u16,
}

/// Simple graph on `0..n`, `adj[i]` holding the neighbours of `i` as bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallGraph {
    n: usize,
    adj: [u8; MAX_VERTICES],
}

/// Index of the pair `i < j` in lexicographic order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        SmallGraph { n, adj: [0; MAX_VERTICES] }
    }

    /// Bit `pair_index(i, j)` of `mask` is the edge `ij`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        let mut g = SmallGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if mask >> pair_index(n, i, j) & 1 == 1 {
                    g.join(i, j);
                }
            }
        }
        g
    }

    /// `None` for graphs with loops, parallel edges or too many vertices.
    pub fn from_graph(g: &MultiGraph) -> Option<Self> {
        if !g.is_simple() || g.vertex_count() > MAX_VERTICES {
            return None;
        }
        let vs: Vec<VertexId> = g.vertices().collect();
        let mut s = SmallGraph::empty(vs.len());
        for e in g.edges() {
            let (i, j) = (vs.binary_search(&e.u).ok()?, vs.binary_search(&e.v).ok()?);
            s.join(i, j);
        }
        Some(s)
    }

    /// The same graph on vertices `1..=n`.
    pub fn to_graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new();
        for v in 1..=self.n as VertexId {
            g.add_vertex(v);
        }
        for (i, j) in self.edges() {
            g.add_edge(i as VertexId + 1, j as VertexId + 1);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn join(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i] >> j & 1 == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn without_edge(&self, i: usize, j: usize) -> Self {
        let mut g = *self;
        g.adj[i] &= !(1 << j);
        g.adj[j] &= !(1 << i);
        g
    }

    fn without_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&x| x != v).collect();
        let mut g = SmallGraph::empty(self.n - 1);
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                if self.adj[x] >> y & 1 == 1 {
                    g.adj[a] |= 1 << b;
                }
            }
        }
        g
    }

    /// Merges `j` into `i`, dropping the loop and any doubled edges.
    fn contract(&self, i: usize, j: usize) -> Self {
        let mut g = *self;
        let merged = (g.adj[i] | g.adj[j]) & !(1 << i) & !(1 << j);
        for x in 0..g.n {
            if merged >> x & 1 == 1 {
                g.join(i, x);
            }
        }
        g.without_vertex(j)
    }
}

pub struct MinorOracle {
    /// `relabel[n][p][k]`: where permutation `p` of `0..n` sends pair `k`.
    relabel: Vec<Vec<Vec<usize>>>,
    closures: HashMap<ClassKey, BTreeSet<ClassKey>>,
}

impl Default for MinorOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl MinorOracle {
    pub fn new() -> Self {
        let relabel = (0..=MAX_VERTICES)
            .map(|n| {
                permutations(n)
                    .into_iter()
                    .map(|p| {
                        let mut table = vec![0; n * n.saturating_sub(1) / 2];
                        for i in 0..n {
                            for j in i + 1..n {
                                let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                                table[pair_index(n, i, j)] = pair_index(n, a, b);
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        MinorOracle { relabel, closures: HashMap::new() }
    }

    pub fn class(&self, g: &SmallGraph) -> ClassKey {
        let n = g.n;
        let pairs: Vec<usize> = g.edges().into_iter().map(|(i, j)| pair_index(n, i, j)).collect();
        let bits = self.relabel[n]
            .iter()
            .map(|table| pairs.iter().fold(0u16, |acc, &k| acc | 1 << table[k]))
            .min()
            .unwrap_or(0);
        ClassKey { n: n as u8, bits }
    }

    /// Classes of every minor of `g`, `g` included.
    pub fn minors(&mut self, g: &SmallGraph) -> &BTreeSet<ClassKey> {
        let key = self.class(g);
        if !self.closures.contains_key(&key) {
            let representative = SmallGraph::from_mask(g.n, key.bits as u32);
            let mut all = BTreeSet::from([key]);
            let mut children = Vec::new();
            for (i, j) in representative.edges() {
                children.push(representative.without_edge(i, j));
                children.push(representative.contract(i, j));
            }
            for v in 0..representative.n {
                children.push(representative.without_vertex(v));
            }
            for child in children {
                all.extend(self.minors(&child).iter().copied());
            }
            self.closures.insert(key, all);
        }
        &self.closures[&key]
    }

    pub fn has_minor(&mut self, g: &SmallGraph, h: &SmallGraph) -> bool {
        let target = self.class(h);
        self.minors(g).contains(&target)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Isomorphism of simple graphs by extending partial vertex maps that
/// preserve degree and adjacency.
pub fn isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let matrix = |g: &MultiGraph| {
        let vs: Vec<VertexId> = g.vertices().collect();
        let mut m = vec![vec![false; vs.len()]; vs.len()];
        for e in g.edges() {
            let (i, j) = (vs.binary_search(&e.u).unwrap(), vs.binary_search(&e.v).unwrap());
            m[i][j] = true;
            m[j][i] = true;
        }
        m
    };
    let (ma, mb) = (matrix(a), matrix(b));
    let degrees = |m: &[Vec<bool>]| m.iter().map(|row| row.iter().filter(|&&x| x).count()).collect::<Vec<_>>();
    let (da, db) = (degrees(&ma), degrees(&mb));
    let n = ma.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut stack = vec![0usize];
    // stack[i] is the next candidate image for vertex i
    while let Some(&next) = stack.last() {
        let i = stack.len() - 1;
        if i == n {
            return true;
        }
        if image[i] != usize::MAX {
            used[image[i]] = false;
            image[i] = usize::MAX;
        }
        let found = (next..n).find(|&j| {
            !used[j] && da[i] == db[j] && (0..i).all(|k| ma[i][k] == mb[j][image[k]])
        });
        match found {
            Some(j) => {
                image[i] = j;
                used[j] = true;
                *stack.last_mut().unwrap() = j + 1;
                stack.push(0);
            }
            None => {
                stack.pop();
            }
        }
    }
    false
}
