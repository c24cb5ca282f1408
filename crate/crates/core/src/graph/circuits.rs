use std::collections::BTreeMap;

use serde::Serialize;

use super::{EdgeId, GraphError, MultiGraph, VertexId};

pub const DEFAULT_CIRCUIT_CAP: usize = 1_000_000;

/// A simple cycle: `edges[i]` runs from `vertices[i]` to `vertices[i + 1]`
/// (indices mod the length). A loop is a circuit of length 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Circuit {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
    #[serde(skip)]
    vertex_set: Vec<VertexId>,
}

impl Circuit {
    pub(crate) fn new(edges: Vec<EdgeId>, vertices: Vec<VertexId>) -> Self {
        debug_assert_eq!(edges.len(), vertices.len());
        let mut vertex_set = vertices.clone();
        vertex_set.sort_unstable();
        Circuit { edges, vertices, vertex_set }
    }

    /// Builds a circuit from a closed vertex walk in `g`, choosing the
    /// smallest-id edge between consecutive vertices.
    pub fn from_vertex_cycle(g: &MultiGraph, walk: &[VertexId]) -> Option<Circuit> {
        let n = walk.len();
        if n < 3 {
            return None;
        }
        let mut sorted = walk.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return None;
        }
        let edges = (0..n)
            .map(|i| g.edge_between(walk[i], walk[(i + 1) % n]))
            .collect::<Option<Vec<_>>>()?;
        Some(Circuit::new(edges, walk.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Visited vertices in traversal order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Visited vertices, sorted.
    pub fn vertex_set(&self) -> &[VertexId] {
        &self.vertex_set
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_set.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &Circuit) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.vertex_set, &other.vertex_set);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// The same cycle with `old` swapped for `new`; traversal is unchanged.
    pub fn with_edge_replaced(&self, old: EdgeId, new: EdgeId) -> Circuit {
        let edges = self
            .edges
            .iter()
            .map(|&e| if e == old { new } else { e })
            .collect();
        Circuit::new(edges, self.vertices.clone())
    }
}

/// Every simple cycle of `g` exactly once, up to rotation and reflection.
///
/// Cycles of length at least 3 are found by backtracking over paths that
/// start at their minimum vertex; the reflection is discarded by requiring
/// the second vertex to be smaller than the last. Parallel edges give
/// distinct circuits.
pub fn enumerate_circuits(g: &MultiGraph, cap: usize) -> Result<Vec<Circuit>, GraphError> {
    let mut out = Vec::new();
    let mut push = |c: Circuit, out: &mut Vec<Circuit>| {
        if out.len() >= cap {
            return Err(GraphError::CircuitCapExceeded(cap));
        }
        out.push(c);
        Ok(())
    };

    let mut adjacency: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> =
        g.vertices().map(|v| (v, Vec::new())).collect();
    let mut between: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        if e.is_loop() {
            push(Circuit::new(vec![e.id], vec![e.u]), &mut out)?;
            continue;
        }
        adjacency.get_mut(&e.u).unwrap().push((e.v, e.id));
        adjacency.get_mut(&e.v).unwrap().push((e.u, e.id));
        between.entry(super::ordered(e.u, e.v)).or_default().push(e.id);
    }

    for (&(u, v), ids) in &between {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                push(Circuit::new(vec![a, b], vec![u, v]), &mut out)?;
            }
        }
    }

    struct Search<'a> {
        adjacency: &'a BTreeMap<VertexId, Vec<(VertexId, EdgeId)>>,
        path: Vec<VertexId>,
        edges: Vec<EdgeId>,
    }

    fn extend(
        s: &mut Search<'_>,
        start: VertexId,
        out: &mut Vec<Circuit>,
        push: &mut dyn FnMut(Circuit, &mut Vec<Circuit>) -> Result<(), GraphError>,
    ) -> Result<(), GraphError> {
        let tip = *s.path.last().unwrap();
        for &(next, edge) in &s.adjacency[&tip] {
            if next == start {
                if s.path.len() >= 3 && s.path[1] < tip {
                    let mut edges = s.edges.clone();
                    edges.push(edge);
                    push(Circuit::new(edges, s.path.clone()), out)?;
                }
            } else if next > start && !s.path.contains(&next) {
                s.path.push(next);
                s.edges.push(edge);
                extend(s, start, out, push)?;
                s.path.pop();
                s.edges.pop();
            }
        }
        Ok(())
    }

    let mut search = Search { adjacency: &adjacency, path: Vec::new(), edges: Vec::new() };
    for start in g.vertices() {
        search.path = vec![start];
        search.edges.clear();
        extend(&mut search, start, &mut out, &mut push)?;
    }
    Ok(out)
}

/// Every unordered pair of vertex-disjoint circuits, each listed once with
/// the earlier-enumerated circuit first.
pub fn disjoint_circuit_pairs(
    g: &MultiGraph,
    cap: usize,
) -> Result<Vec<(Circuit, Circuit)>, GraphError> {
    let circuits = enumerate_circuits(g, cap)?;
    let mut pairs = Vec::new();
    for (i, a) in circuits.iter().enumerate() {
        for b in &circuits[i + 1..] {
            if a.is_disjoint(b) {
                if pairs.len() >= cap {
                    return Err(GraphError::CircuitCapExceeded(cap));
                }
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin;

    fn count(name: &str) -> usize {
        enumerate_circuits(&builtin(name).unwrap(), DEFAULT_CIRCUIT_CAP).unwrap().len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count("C3"), 1);
        assert_eq!(count("P5"), 0);
        assert_eq!(count("K4"), 7);
    }

    #[test]
    fn tree_has_no_circuits() {
        let star = MultiGraph::from_edges([(1, 2), (1, 3), (1, 4), (4, 5)]);
        assert!(enumerate_circuits(&star, 10).unwrap().is_empty());
    }

    #[test]
    fn circuits_are_well_formed() {
        let g = builtin("K3,3,1").unwrap();
        for c in enumerate_circuits(&g, DEFAULT_CIRCUIT_CAP).unwrap() {
            let n = c.len();
            for i in 0..n {
                let e = g.edge(c.edges()[i]).unwrap();
                let (a, b) = (c.vertices()[i], c.vertices()[(i + 1) % n]);
                assert!(e.touches(a) && e.other(a) == Some(b));
            }
            assert_eq!(c.vertex_set().len(), n);
        }
    }

    #[test]
    fn multigraph_circuits() {
        let mut g = MultiGraph::from_edges([(1, 2), (2, 3), (3, 1)]);
        g.add_edge(1, 2);
        g.add_edge(3, 3);
        let cs = enumerate_circuits(&g, 100).unwrap();
        // loop, the 2-cycle on the parallel pair, and two triangles
        let mut lens: Vec<_> = cs.iter().map(Circuit::len).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 2, 3, 3]);
    }

    #[test]
    fn cap_is_enforced() {
        let k6 = builtin("K6").unwrap();
        assert_eq!(
            enumerate_circuits(&k6, 100),
            Err(GraphError::CircuitCapExceeded(100))
        );
    }

    #[test]
    fn disjoint_pairs() {
        let pairs = |n: &str| disjoint_circuit_pairs(&builtin(n).unwrap(), DEFAULT_CIRCUIT_CAP).unwrap();
        assert_eq!(pairs("K5").len(), 0);
        let k6 = pairs("K6");
        assert!(k6.iter().all(|(a, b)| a.len() == 3 && b.len() == 3 && a.is_disjoint(b)));
        let k331 = pairs("K3,3,1");
        for (a, b) in &k331 {
            let mut lens = [a.len(), b.len()];
            lens.sort();
            assert_eq!(lens, [3, 4]);
            let tri = if a.len() == 3 { a } else { b };
            assert!(tri.contains_vertex(7));
        }
    }

    #[test]
    fn edge_replacement() {
        let c = Circuit::from_vertex_cycle(&builtin("K4").unwrap(), &[1, 2, 3]).unwrap();
        let d = c.with_edge_replaced(c.edges()[0], EdgeId(99));
        assert_eq!(d.edges()[0], EdgeId(99));
        assert_eq!(d.vertices(), c.vertices());
    }
}
