//! Canonical forms for small simple graphs.
//!
//! Individualisation-refinement: the ordered partition is refined to an
//! equitable one (cells split by neighbour counts), then each vertex of the
//! first smallest non-singleton cell is individualised in turn. Every
//! discrete leaf yields a labelling; the key is the lexicographically
//! largest upper-triangle adjacency string over all leaves. Children that
//! an already discovered automorphism (fixing the current prefix) maps onto
//! an explored sibling are skipped, since their subtrees produce the same
//! certificates.

use std::fmt;

use super::{GraphError, MultiGraph, VertexId};

pub const MAX_CANONICAL_VERTICES: usize = 16;

/// Isomorphism-class key of the simple graph underlying a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn edge_count(&self) -> usize {
        u16::from_be_bytes([self.0[1], self.0[2]]) as usize
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_form(g: &MultiGraph) -> Result<CanonicalForm, GraphError> {
    let n = g.vertex_count();
    if n > MAX_CANONICAL_VERTICES {
        return Err(GraphError::TooManyVertices(n, MAX_CANONICAL_VERTICES));
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| ids.binary_search(&v).unwrap();
    let mut masks = vec![0u64; n];
    for e in g.edges().filter(|e| !e.is_loop()) {
        let (a, b) = (index(e.u), index(e.v));
        masks[a] |= 1 << b;
        masks[b] |= 1 << a;
    }
    Ok(canonical_key_of_masks(&masks))
}

/// Canonical key for an adjacency given as bitmasks over `0..n`, `n <= 64`.
pub(crate) fn canonical_key_of_masks(adj: &[u64]) -> CanonicalForm {
    let n = adj.len();
    assert!(n <= 64);
    let edges: u32 = adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
    let mut search = Search {
        adj,
        best: None,
        best_order: Vec::new(),
        automorphisms: Vec::new(),
    };
    let mut prefix = Vec::new();
    let root = refine(adj, vec![(0..n).collect()]);
    search.descend(root, &mut prefix);

    let mut key = vec![n as u8];
    key.extend_from_slice(&(edges as u16).to_be_bytes());
    for w in search.best.unwrap_or_default() {
        key.extend_from_slice(&w.to_be_bytes());
    }
    CanonicalForm(key)
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    adj: &'a [u64],
    best: Option<Vec<u64>>,
    best_order: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, partition: Partition, prefix: &mut Vec<usize>) {
        let target = partition
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(partition.into_iter().map(|c| c[0]).collect());
            return;
        };

        let mut explored: Vec<usize> = Vec::new();
        for &w in &partition[target] {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, w) {
                continue;
            }
            explored.push(w);
            let mut child = partition.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != w).collect();
            child.splice(target..=target, [vec![w], rest]);
            prefix.push(w);
            self.descend(refine(self.adj, child), prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = order.len();
        // upper triangle, row by row, most significant bit first
        let bits = n * n.saturating_sub(1) / 2;
        let mut cert = vec![0u64; bits.div_ceil(64)];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[order[i]] >> order[j] & 1 == 1 {
                    cert[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        match &self.best {
            Some(best) if cert < *best => {}
            Some(best) if cert == *best => {
                // order[i] -> best_order[i] is an automorphism
                let mut perm = vec![0; n];
                for (i, &v) in order.iter().enumerate() {
                    perm[v] = self.best_order[i];
                }
                if perm.iter().enumerate().any(|(i, &p)| i != p) {
                    self.automorphisms.push(perm);
                }
            }
            _ => {
                self.best = Some(cert);
                self.best_order = order;
            }
        }
    }

    /// Whether `w` shares an orbit with an explored sibling under the group
    /// generated by the known automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for perm in &self.automorphisms {
            if prefix.iter().all(|&p| perm[p] == p) {
                for (i, &j) in perm.iter().enumerate() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&x| find(&mut parent, x) == root)
    }
}

/// Refines an ordered partition until every cell is equitable with respect
/// to every other cell. Split cells are replaced in place by their parts in
/// increasing order of neighbour count, so the result depends only on the
/// input partition's cell structure.
fn refine(adj: &[u64], mut partition: Partition) -> Partition {
    loop {
        let mut changed = false;
        let mut splitter = 0;
        while splitter < partition.len() {
            let mask: u64 = partition[splitter].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(partition.len());
            for cell in &partition {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((adj[v] & mask).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != partition.len() {
                changed = true;
                partition = next;
            }
            splitter += 1;
        }
        if !changed {
            return partition;
        }
    }
}
