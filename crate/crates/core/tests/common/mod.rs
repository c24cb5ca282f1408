#![allow(dead_code)]

use std::collections::BTreeSet;

use linkless::graph::{MultiGraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All vertex pairs of `1..=n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for a in 1..=n as VertexId {
        for b in a + 1..=n as VertexId {
            out.push((a, b));
        }
    }
    out
}

/// Simple graph on `1..=n` whose edges are the pairs selected by `mask`.
pub fn from_mask(n: usize, mask: u64) -> MultiGraph {
    let mut g = MultiGraph::new();
    for v in 1..=n as VertexId {
        g.add_vertex(v);
    }
    for (i, (a, b)) in pairs(n).into_iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(a, b);
        }
    }
    g
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> MultiGraph {
    let mut mask = 0u64;
    for i in 0..pairs(n).len() {
        if rng.gen_bool(p) {
            mask |= 1 << i;
        }
    }
    from_mask(n, mask)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency of a simple graph as a set of sorted pairs.
pub fn edge_set(g: &MultiGraph) -> BTreeSet<(VertexId, VertexId)> {
    g.edges()
        .filter(|e| !e.is_loop())
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect()
}

/// Isomorphism of simple graphs by trying every bijection.
pub fn brute_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    if a.vertex_count() != b.vertex_count() {
        return false;
    }
    let ea = edge_set(a);
    let eb = edge_set(b);
    if ea.len() != eb.len() {
        return false;
    }
    let va: Vec<VertexId> = a.vertices().collect();
    let vb: Vec<VertexId> = b.vertices().collect();
    let mut perm: Vec<usize> = (0..vb.len()).collect();
    loop {
        let image = |v: VertexId| vb[perm[va.binary_search(&v).unwrap()]];
        if ea.iter().all(|&(x, y)| {
            let (p, q) = (image(x), image(y));
            eb.contains(&(p.min(q), p.max(q)))
        }) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
