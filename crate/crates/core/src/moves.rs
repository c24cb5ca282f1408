//! Delta-Y and Y-Delta moves, and the Petersen family as the Delta-Y
//! closure of `K6` and `K3,3,1`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{builtin, canonical_form, CanonicalForm, GraphError, MultiGraph, VertexId};

pub const DEFAULT_CLOSURE_LIMIT: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertices {0:?} do not form a triangle")]
    NotATriangle([VertexId; 3]),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    BadDegree { vertex: VertexId, degree: usize },
    #[error("vertex {0} has a repeated neighbour or an incident loop")]
    RepeatedNeighbor(VertexId),
    #[error("Delta-Y closure exceeded {0} isomorphism classes")]
    ClosureTooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Three distinct vertices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TriangleSelector([VertexId; 3]);

impl TriangleSelector {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Result<Self, MoveError> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(MoveError::NotATriangle([a, b, c]));
        }
        Ok(TriangleSelector(t))
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }
}

/// Replaces the triangle's three edges by a new vertex (id `max + 1`)
/// joined to its corners.
pub fn delta_y(g: &MultiGraph, t: TriangleSelector) -> Result<MultiGraph, MoveError> {
    let [a, b, c] = t.0;
    let mut out = g.clone();
    for (x, y) in [(a, b), (a, c), (b, c)] {
        let e = g.edge_between(x, y).ok_or(MoveError::NotATriangle(t.0))?;
        out = out.delete_edge(e)?;
    }
    let v = g.max_vertex_id().map_or(0, |m| m + 1);
    for x in [a, b, c] {
        out.add_edge(v, x);
    }
    Ok(out)
}

/// Removes a degree-3 vertex and joins its neighbours pairwise, skipping
/// pairs that are already adjacent.
pub fn y_delta(g: &MultiGraph, v: VertexId) -> Result<MultiGraph, MoveError> {
    if !g.contains_vertex(v) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    let degree = g.degree(v);
    if degree != 3 {
        return Err(MoveError::BadDegree { vertex: v, degree });
    }
    let nbrs: Vec<VertexId> = g.neighbors(v).into_iter().collect();
    if nbrs.len() != 3 {
        return Err(MoveError::RepeatedNeighbor(v));
    }
    let mut out = g.without_vertex(v)?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if out.edge_between(nbrs[i], nbrs[j]).is_none() {
            out.add_edge(nbrs[i], nbrs[j]);
        }
    }
    Ok(out)
}

/// How a member was reached: replaying `moves` on the seed reproduces the
/// member's labelled graph exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub seed: String,
    pub moves: Vec<TriangleSelector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    pub name: String,
    #[serde(skip)]
    pub graph: MultiGraph,
    #[serde(serialize_with = "hex")]
    pub canonical: CanonicalForm,
    pub derivation: Derivation,
}

fn hex<S: serde::Serializer>(c: &CanonicalForm, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_hex())
}

#[derive(Debug, Clone, Serialize)]
pub struct PetersenFamily {
    members: Vec<FamilyMember>,
}

impl PetersenFamily {
    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&FamilyMember> {
        self.members.iter().find(|m| m.name == name)
    }

    /// The member isomorphic to `g`, if any.
    pub fn member_of(&self, g: &MultiGraph) -> Option<&FamilyMember> {
        let key = canonical_form(&g.simplified()).ok()?;
        self.members.iter().find(|m| m.canonical == key)
    }

    /// Applies Delta-Y to every triangle of every member and returns the
    /// results that fall outside the family (empty when closed).
    pub fn closure_violations(&self) -> Vec<(String, TriangleSelector)> {
        let mut bad = Vec::new();
        for m in &self.members {
            for [a, b, c] in m.graph.triangles() {
                let t = TriangleSelector([a, b, c]);
                let ok = delta_y(&m.graph, t)
                    .map(|h| self.member_of(&h).is_some())
                    .unwrap_or(false);
                if !ok {
                    bad.push((m.name.clone(), t));
                }
            }
        }
        bad
    }
}

/// Breadth-first Delta-Y closure of `seeds`, deduplicated by canonical form.
///
/// Triangles are tried in lexicographic vertex order, so derivations are
/// reproducible. Seeds keep their names (or `seed<i>`); derived classes are
/// named `G<n>` by vertex count, with `a`, `b`, ... suffixes in canonical
/// form order when a count repeats. A member isomorphic to the Petersen
/// graph is named `Petersen`.
pub fn petersen_closure(seeds: &[MultiGraph], limit: usize) -> Result<PetersenFamily, MoveError> {
    let mut members: Vec<FamilyMember> = Vec::new();
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    for (i, seed) in seeds.iter().enumerate() {
        let graph = seed.simplified();
        let canonical = canonical_form(&graph)?;
        if index.contains_key(&canonical) {
            continue;
        }
        let name = seed.name().map_or_else(|| format!("seed{i}"), str::to_string);
        index.insert(canonical.clone(), members.len());
        queue.push_back(members.len());
        members.push(FamilyMember {
            name: name.clone(),
            graph,
            canonical,
            derivation: Derivation { seed: name, moves: Vec::new() },
        });
    }
    let seed_count = members.len();

    while let Some(i) = queue.pop_front() {
        let parent = members[i].graph.clone();
        for [a, b, c] in parent.triangles() {
            let t = TriangleSelector([a, b, c]);
            let child = delta_y(&parent, t)?;
            let canonical = canonical_form(&child)?;
            if index.contains_key(&canonical) {
                continue;
            }
            if members.len() >= limit {
                return Err(MoveError::ClosureTooLarge(limit));
            }
            let mut derivation = members[i].derivation.clone();
            derivation.moves.push(t);
            index.insert(canonical.clone(), members.len());
            queue.push_back(members.len());
            members.push(FamilyMember { name: String::new(), graph: child, canonical, derivation });
        }
    }

    let petersen = canonical_form(&builtin("petersen")?)?;
    let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, m) in members.iter().enumerate().skip(seed_count) {
        by_size.entry(m.graph.vertex_count()).or_default().push(i);
    }
    for (n, mut group) in by_size {
        group.sort_by(|&x, &y| members[x].canonical.cmp(&members[y].canonical));
        let single = group.len() == 1;
        for (k, i) in group.into_iter().enumerate() {
            let name = if members[i].canonical == petersen {
                "Petersen".to_string()
            } else if single {
                format!("G{n}")
            } else {
                format!("G{n}{}", (b'a' + k as u8) as char)
            };
            members[i].graph.set_name(Some(name.clone()));
            members[i].name = name;
        }
    }
    Ok(PetersenFamily { members })
}

// Keys of the seven members, frozen from the first closure run.
const FAMILY_KEYS: [&str; 7] = [
    "06000ffffe000000000000",
    "07000f3dfe580000000000",
    "07000fe0eff80000000000",
    "08000fc2361fb000000000",
    "08000f0fc1df8000000000",
    "09000f29948c9270000000",
    "0a000f0394ca4649000000",
];

/// The Petersen family, computed once and checked against frozen keys.
pub fn petersen_family() -> &'static PetersenFamily {
    static FAMILY: OnceLock<PetersenFamily> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let seeds = [builtin("K6").unwrap(), builtin("K3,3,1").unwrap()];
        let family = petersen_closure(&seeds, DEFAULT_CLOSURE_LIMIT)
            .expect("closure of the canonical seeds");
        let keys: Vec<String> = family.members.iter().map(|m| m.canonical.to_hex()).collect();
        assert_eq!(keys, FAMILY_KEYS, "Petersen family drifted from frozen keys");
        family
    })
}
