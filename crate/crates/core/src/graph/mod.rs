//! Finite multigraphs, possibly with loops and repeated edges.
//!
//! Graph values are immutable in spirit: the minor operations
//! ([`MultiGraph::delete_edge`], [`MultiGraph::contract_edge`]) return new
//! graphs and leave the receiver untouched. Vertex ids are arbitrary
//! integers and survive every operation; merged vertices keep the smaller id.

mod canon;
mod circuits;
mod parse;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_form, CanonicalForm, MAX_CANONICAL_VERTICES};
pub(crate) use canon::canonical_key_of_masks;
pub use circuits::{
    disjoint_circuit_pairs, enumerate_circuits, Circuit, DEFAULT_CIRCUIT_CAP,
};
pub use parse::{builtin, parse_graph};

pub type VertexId = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`, or `None` if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unknown builtin graph `{0}`")]
    UnknownBuiltin(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("more than {0} circuits; graph too large for circuit enumeration")]
    CircuitCapExceeded(usize),
    #[error("graph has {0} vertices, canonical forms support at most {1}")]
    TooManyVertices(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    name: Option<String>,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from endpoint pairs; edges get ids `0..` in input order.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.vertices.insert(v)
    }

    /// Adds an edge with the next free id. Missing endpoints are added.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = self.next_edge_id();
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(id, Edge { id, u, v });
        id
    }

    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdgeId(id));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(id, Edge { id, u, v });
        Ok(())
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges
            .keys()
            .next_back()
            .map_or(EdgeId(0), |e| EdgeId(e.0 + 1))
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    /// Edges in increasing id order.
    pub fn edges(&self) -> impl DoubleEndedIterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges().filter(move |e| e.touches(v))
    }

    /// Distinct neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.incident(v)
            .filter_map(|e| e.other(v))
            .filter(|&w| w != v)
            .collect()
    }

    /// Smallest-id edge joining `u` and `v`.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edges()
            .find(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .map(|e| e.id)
    }

    pub fn has_loops(&self) -> bool {
        self.edges().any(Edge::is_loop)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges().all(|e| !e.is_loop() && seen.insert(ordered(e.u, e.v)))
    }

    /// Drops loops and keeps only the smallest-id edge of each parallel class.
    pub fn simplified(&self) -> MultiGraph {
        let mut seen = BTreeSet::new();
        let edges = self
            .edges()
            .filter(|e| !e.is_loop() && seen.insert(ordered(e.u, e.v)))
            .map(|e| (e.id, *e))
            .collect();
        MultiGraph {
            vertices: self.vertices.clone(),
            edges,
            name: self.name.clone(),
        }
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<MultiGraph, GraphError> {
        if !self.edges.contains_key(&id) {
            return Err(GraphError::UnknownEdge(id));
        }
        let mut g = self.clone();
        g.edges.remove(&id);
        g.name = None;
        Ok(g)
    }

    /// Merges the endpoints of `id` into the smaller vertex id.
    ///
    /// With `simplify`, loops and parallel duplicates produced by the merge
    /// are dropped (smallest edge id survives); without it the raw multigraph
    /// is returned, minus the contracted edge itself.
    pub fn contract_edge(&self, id: EdgeId, simplify: bool) -> Result<MultiGraph, GraphError> {
        let edge = *self.edges.get(&id).ok_or(GraphError::UnknownEdge(id))?;
        if edge.is_loop() {
            return Err(GraphError::LoopContraction(id));
        }
        let (keep, gone) = ordered(edge.u, edge.v);
        let rename = |x: VertexId| if x == gone { keep } else { x };
        let mut g = MultiGraph {
            vertices: self.vertices.clone(),
            edges: BTreeMap::new(),
            name: None,
        };
        g.vertices.remove(&gone);
        for e in self.edges().filter(|e| e.id != id) {
            g.edges.insert(e.id, Edge { id: e.id, u: rename(e.u), v: rename(e.v) });
        }
        if simplify {
            g = g.simplified();
            g.name = None;
        }
        Ok(g)
    }

    /// Removes `v` and all incident edges.
    pub fn without_vertex(&self, v: VertexId) -> Result<MultiGraph, GraphError> {
        if !self.vertices.contains(&v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut g = self.clone();
        g.vertices.remove(&v);
        g.edges.retain(|_, e| !e.touches(v));
        g.name = None;
        Ok(g)
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(_, e)| keep.contains(&e.u) && keep.contains(&e.v))
                .map(|(k, e)| (*k, *e))
                .collect(),
            name: None,
        }
    }

    /// Connected components, ordered by smallest vertex id.
    pub fn components(&self) -> Vec<MultiGraph> {
        let mut adjacency: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in self.edges() {
            adjacency.entry(e.u).or_default().push(e.v);
            adjacency.entry(e.v).or_default().push(e.u);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut part = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adjacency[&x] {
                    if seen.insert(y) {
                        part.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(self.induced(&part));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex triples `a < b < c` that are pairwise adjacent, in
    /// lexicographic order.
    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        let adjacent: BTreeSet<(VertexId, VertexId)> = self
            .edges()
            .filter(|e| !e.is_loop())
            .map(|e| ordered(e.u, e.v))
            .collect();
        let mut out = Vec::new();
        for &(a, b) in &adjacent {
            for &c in self.vertices.range(b + 1..) {
                if adjacent.contains(&(a, c)) && adjacent.contains(&(b, c)) {
                    out.push([a, b, c]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Applies a vertex renaming. Vertices missing from `map` keep their id.
    pub fn relabeled(&self, map: &BTreeMap<VertexId, VertexId>) -> MultiGraph {
        let f = |x: VertexId| map.get(&x).copied().unwrap_or(x);
        MultiGraph {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            edges: self
                .edges()
                .map(|e| (e.id, Edge { id: e.id, u: f(e.u), v: f(e.v) }))
                .collect(),
            name: self.name.clone(),
        }
    }

    /// Degree sequence, sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Serialises to the edge-list document format.
    ///
    /// A third column carries the edge id whenever ids differ from line order.
    pub fn to_edge_list(&self) -> String {
        let sequential = self.edges().enumerate().all(|(i, e)| e.id.0 as usize == i);
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for e in self.edges() {
            if sequential {
                out.push_str(&format!("{} {}\n", e.u, e.v));
            } else {
                out.push_str(&format!("{} {} {}\n", e.u, e.v, e.id.0));
            }
        }
        out
    }
}

pub(crate) fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
