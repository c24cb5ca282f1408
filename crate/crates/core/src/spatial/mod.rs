//! Piecewise-linear embeddings of graphs in 3-space with exact rational
//! coordinates, their regular projections, diagrammatic linking numbers and
//! the mod-2 invariant `omega`.
//!
//! Every edge is a polyline from the position of its first endpoint to the
//! position of its second; the polyline's direction orients the edge for
//! crossing signs. All incidence and ordering predicates are exact.

mod diagram;
mod experiments;
mod geometry;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{parse_graph, EdgeId, GraphError, MultiGraph, VertexId};

pub use diagram::{
    linking_number, omega_graph, omega_graph_with, omega_pair, project, regular_projections,
    Crossing, OmegaReport, Orientation, PairOmega, ProjectedDiagram, SegmentRef,
};
pub use experiments::{
    conway_gordon_experiment, edge_swap_check, random_embedding, EdgeSwapReport,
    ExperimentReport, SwapFailure, CUBE_HALF_SIDE,
};
pub use geometry::RationalPoint;

use geometry::{on_segment, segment_meet, Meet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpatialError {
    #[error("embeddings do not support loops")]
    Loop,
    #[error("embeddings do not support parallel edges")]
    ParallelEdges,
    #[error("invalid embedding: {0}")]
    Invalid(String),
    #[error("projection is not regular: {0}")]
    NonRegular(String),
    #[error("gave up after {0} attempts: {1}")]
    RetryLimit(usize, String),
    #[error("circuits share a vertex")]
    NotDisjoint,
    #[error("edge {0} is not part of the embedding")]
    UnknownEdge(EdgeId),
    #[error("projections disagree: {0}")]
    Inconsistent(String),
    #[error("unsupported graph: {0}")]
    Unsupported(String),
    #[error("embedding document: {0}")]
    Document(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with a position for every vertex and a polyline for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialEmbedding {
    graph: MultiGraph,
    positions: BTreeMap<VertexId, RationalPoint>,
    paths: BTreeMap<EdgeId, Vec<RationalPoint>>,
}

/// Identity of a polyline corner: a graph vertex, or an interior bend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    Vertex(VertexId),
    Bend(EdgeId, usize),
}

pub(crate) struct Segment<'a> {
    pub edge: EdgeId,
    pub index: usize,
    pub a: &'a RationalPoint,
    pub b: &'a RationalPoint,
    pub na: Node,
    pub nb: Node,
}

impl Segment<'_> {
    /// Corners both segments share, as positions in `(self, other)`.
    pub(crate) fn shared_corner(&self, other: &Segment<'_>) -> Option<(usize, usize)> {
        for (i, n) in [self.na, self.nb].into_iter().enumerate() {
            for (j, m) in [other.na, other.nb].into_iter().enumerate() {
                if n == m {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl SpatialEmbedding {
    /// Straight-segment embedding.
    pub fn straight(
        graph: MultiGraph,
        positions: BTreeMap<VertexId, RationalPoint>,
    ) -> Result<Self, SpatialError> {
        Self::new(graph, positions, BTreeMap::new())
    }

    /// Embedding whose edge `e` runs through `waypoints[e]` (straight when
    /// absent). Every invariant is checked.
    pub fn new(
        graph: MultiGraph,
        positions: BTreeMap<VertexId, RationalPoint>,
        mut waypoints: BTreeMap<EdgeId, Vec<RationalPoint>>,
    ) -> Result<Self, SpatialError> {
        if graph.has_loops() {
            return Err(SpatialError::Loop);
        }
        if !graph.is_simple() {
            return Err(SpatialError::ParallelEdges);
        }
        for v in graph.vertices() {
            if !positions.contains_key(&v) {
                return Err(SpatialError::Invalid(format!("vertex {v} has no position")));
            }
        }
        if let Some(v) = positions.keys().find(|v| !graph.contains_vertex(**v)) {
            return Err(SpatialError::Invalid(format!("position given for unknown vertex {v}")));
        }
        if let Some(e) = waypoints.keys().find(|e| graph.edge(**e).is_none()) {
            return Err(SpatialError::UnknownEdge(*e));
        }
        let mut paths = BTreeMap::new();
        for e in graph.edges() {
            let mut path = vec![positions[&e.u].clone()];
            path.extend(waypoints.remove(&e.id).unwrap_or_default());
            path.push(positions[&e.v].clone());
            paths.insert(e.id, path);
        }
        let emb = SpatialEmbedding { graph, positions, paths };
        emb.validate(None)?;
        Ok(emb)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn position(&self, v: VertexId) -> Option<&RationalPoint> {
        self.positions.get(&v)
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, RationalPoint> {
        &self.positions
    }

    /// Full polyline of `e`, endpoints included.
    pub fn path(&self, e: EdgeId) -> Option<&[RationalPoint]> {
        self.paths.get(&e).map(Vec::as_slice)
    }

    /// Interior bends of `e`.
    pub fn waypoints(&self, e: EdgeId) -> Option<&[RationalPoint]> {
        self.paths.get(&e).map(|p| &p[1..p.len() - 1])
    }

    pub fn segment_count(&self) -> usize {
        self.paths.values().map(|p| p.len() - 1).sum()
    }

    /// Replaces the path of `edge` by `polyline`, which must run between
    /// the edge's endpoints (in either direction) and otherwise avoid the
    /// rest of the embedding.
    pub fn reroute_edge(&self, edge: EdgeId, polyline: Vec<RationalPoint>) -> Result<Self, SpatialError> {
        let e = *self.graph.edge(edge).ok_or(SpatialError::UnknownEdge(edge))?;
        let polyline = self.orient_polyline(e.u, e.v, polyline)?;
        let mut out = self.clone();
        out.paths.insert(edge, polyline);
        out.validate(Some(edge))?;
        Ok(out)
    }

    /// Adds a new edge parallel to `edge` along `polyline`. Used to hold an
    /// old and a new route side by side.
    pub(crate) fn with_parallel_edge(
        &self,
        edge: EdgeId,
        polyline: Vec<RationalPoint>,
    ) -> Result<(Self, EdgeId), SpatialError> {
        let e = *self.graph.edge(edge).ok_or(SpatialError::UnknownEdge(edge))?;
        let polyline = self.orient_polyline(e.u, e.v, polyline)?;
        let mut out = self.clone();
        let id = out.graph.add_edge(e.u, e.v);
        out.paths.insert(id, polyline);
        out.validate(Some(id))?;
        Ok((out, id))
    }

    fn orient_polyline(
        &self,
        u: VertexId,
        v: VertexId,
        mut polyline: Vec<RationalPoint>,
    ) -> Result<Vec<RationalPoint>, SpatialError> {
        let (pu, pv) = (&self.positions[&u], &self.positions[&v]);
        if polyline.len() < 2 {
            return Err(SpatialError::Invalid("a polyline needs at least two points".into()));
        }
        let ends = (polyline.first().unwrap(), polyline.last().unwrap());
        if ends == (pu, pv) {
            Ok(polyline)
        } else if ends == (pv, pu) {
            polyline.reverse();
            Ok(polyline)
        } else {
            Err(SpatialError::Invalid(format!(
                "polyline must run from {pu} to {pv}"
            )))
        }
    }

    pub(crate) fn segments(&self) -> Vec<Segment<'_>> {
        let mut out = Vec::with_capacity(self.segment_count());
        for (&id, path) in &self.paths {
            let e = self.graph.edge(id).unwrap();
            let last = path.len() - 1;
            let node = |k: usize| match k {
                0 => Node::Vertex(e.u),
                k if k == last => Node::Vertex(e.v),
                k => Node::Bend(id, k),
            };
            for k in 0..last {
                out.push(Segment {
                    edge: id,
                    index: k,
                    a: &path[k],
                    b: &path[k + 1],
                    na: node(k),
                    nb: node(k + 1),
                });
            }
        }
        out
    }

    /// Checks the embedding invariants. With `only`, the other edges are
    /// assumed to be valid among themselves.
    fn validate(&self, only: Option<EdgeId>) -> Result<(), SpatialError> {
        let invalid = |m: String| Err(SpatialError::Invalid(m));
        if only.is_none() {
            let distinct: BTreeSet<&RationalPoint> = self.positions.values().collect();
            if distinct.len() != self.positions.len() {
                return invalid("two vertices share a position".into());
            }
        }
        for (&id, path) in &self.paths {
            if only.is_some_and(|o| o != id) {
                continue;
            }
            if path.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("edge {id} has a zero-length segment"));
            }
        }

        let segments = self.segments();
        let involved = |s: &Segment<'_>| only.is_none_or(|o| s.edge == o);
        for (i, s) in segments.iter().enumerate() {
            for t in &segments[i + 1..] {
                if !involved(s) && !involved(t) {
                    continue;
                }
                match segment_meet(s.a, s.b, t.a, t.b) {
                    Meet::Disjoint => {}
                    Meet::Overlap => {
                        return invalid(format!(
                            "segments {}#{} and {}#{} overlap",
                            s.edge, s.index, t.edge, t.index
                        ))
                    }
                    Meet::Point(p) => {
                        let allowed = s.shared_corner(t).is_some_and(|(i, _)| {
                            (if i == 0 { s.a } else { s.b }) == &p
                        });
                        if !allowed {
                            return invalid(format!(
                                "segments {}#{} and {}#{} meet at {p}",
                                s.edge, s.index, t.edge, t.index
                            ));
                        }
                    }
                }
            }
        }

        for (&v, p) in &self.positions {
            for s in segments.iter().filter(|s| involved(s)) {
                if s.na != Node::Vertex(v) && s.nb != Node::Vertex(v) && on_segment(p, s.a, s.b) {
                    return invalid(format!("vertex {v} lies on edge {}", s.edge));
                }
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> EmbeddingDocument {
        EmbeddingDocument {
            name: self.graph.name().map(str::to_string),
            graph: self.graph.to_edge_list(),
            vertices: self
                .positions
                .iter()
                .map(|(v, p)| (v.to_string(), p.clone()))
                .collect(),
            edges: self
                .graph
                .edges()
                .map(|e| EdgeDocument {
                    id: Some(e.id.0),
                    u: e.u,
                    v: e.v,
                    waypoints: self.waypoints(e.id).unwrap().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("embedding serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, SpatialError> {
        let doc: EmbeddingDocument =
            serde_json::from_str(text).map_err(|e| SpatialError::Document(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: EmbeddingDocument) -> Result<Self, SpatialError> {
        let bad = |m: String| SpatialError::Document(m);
        let mut graph = parse_graph(&doc.graph)?;
        if doc.name.is_some() {
            graph.set_name(doc.name);
        }
        let mut positions = BTreeMap::new();
        for (key, p) in doc.vertices {
            let v: VertexId = key.trim().parse().map_err(|_| bad(format!("`{key}` is not a vertex id")))?;
            positions.insert(v, p);
        }
        let mut waypoints = BTreeMap::new();
        for entry in doc.edges {
            let id = match entry.id {
                Some(id) => EdgeId(id),
                None => graph
                    .edge_between(entry.u, entry.v)
                    .ok_or_else(|| bad(format!("no edge {} {}", entry.u, entry.v)))?,
            };
            let e = graph.edge(id).ok_or_else(|| bad(format!("no edge {id}")))?;
            let mut w = entry.waypoints;
            if (e.u, e.v) == (entry.v, entry.u) && e.u != e.v {
                w.reverse();
            } else if (e.u, e.v) != (entry.u, entry.v) {
                return Err(bad(format!("edge {id} does not join {} and {}", entry.u, entry.v)));
            }
            if waypoints.insert(id, w).is_some() {
                return Err(bad(format!("edge {id} listed twice")));
            }
        }
        Self::new(graph, positions, waypoints)
    }
}

/// On-disk form of an embedding. `graph` is an edge-list document or a
/// builtin name; coordinates are `p/q` or integer strings. Edges missing
/// from `edges` are straight.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub graph: String,
    pub vertices: BTreeMap<String, RationalPoint>,
    #[serde(default)]
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<u32>,
    pub u: VertexId,
    pub v: VertexId,
    #[serde(default)]
    pub waypoints: Vec<RationalPoint>,
}
