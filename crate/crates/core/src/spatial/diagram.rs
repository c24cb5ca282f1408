//! Regular projections and diagrammatic linking numbers.
//!
//! A direction `d` is completed to a right-handed frame `(u, w, d)` with
//! `u = d x e_k` (`e_k` the axis where `d` is smallest) and `w = d x u`.
//! A point projects to `(p.u, p.w)` at depth `p.d`; the viewer sits at
//! `+infinity` along `d`, so the strand with the larger depth is over.
//! A crossing's sign is the sign of `(over x under) . d` for the strands'
//! polyline directions, which is the usual right-hand rule.
//!
//! `lk(J, K)` is the signed count of crossings where `J` passes over `K`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::{RationalPoint, SpatialEmbedding, SpatialError};
use crate::graph::{disjoint_circuit_pairs, Circuit, EdgeId, VertexId, DEFAULT_CIRCUIT_CAP};

/// Seed of the direction stream used by [`omega_graph`].
pub const DIRECTION_SEED: u64 = 0;
const DIRECTION_RANGE: i64 = 1000;
const DIRECTION_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentRef {
    pub edge: EdgeId,
    pub segment: usize,
    /// Position along the segment, in `(0, 1)`.
    #[serde(serialize_with = "ratio_string")]
    pub param: BigRational,
}

fn ratio_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub over: SegmentRef,
    pub under: SegmentRef,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectedDiagram {
    pub direction: RationalPoint,
    pub crossings: Vec<Crossing>,
    #[serde(skip)]
    ends: BTreeMap<EdgeId, VertexId>,
    /// (over, under) edge pair -> (sum of signs, number of crossings)
    #[serde(skip)]
    tally: BTreeMap<(EdgeId, EdgeId), (i64, u64)>,
}

impl ProjectedDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Crossings between the two edge sets, in either over/under order.
    pub fn crossings_between(&self, a: &[EdgeId], b: &[EdgeId]) -> usize {
        let mut n = 0;
        for x in a {
            for y in b {
                n += self.tally.get(&(*x, *y)).map_or(0, |t| t.1);
                n += self.tally.get(&(*y, *x)).map_or(0, |t| t.1);
            }
        }
        n as usize
    }
}

struct Flat {
    x: BigRational,
    y: BigRational,
    depth: BigRational,
}

fn flatten(p: &RationalPoint, u: &RationalPoint, w: &RationalPoint, d: &RationalPoint) -> Flat {
    Flat { x: p.dot(u), y: p.dot(w), depth: p.dot(d) }
}

fn cross2(ax: &BigRational, ay: &BigRational, bx: &BigRational, by: &BigRational) -> BigRational {
    ax * by - ay * bx
}

fn orient(a: &Flat, b: &Flat, c: &Flat) -> Ordering {
    cross2(&(&b.x - &a.x), &(&b.y - &a.y), &(&c.x - &a.x), &(&c.y - &a.y)).cmp(&BigRational::zero())
}

/// `c` lies on the closed segment `a b`, given that the three are collinear.
fn within(a: &Flat, b: &Flat, c: &Flat) -> bool {
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lo_x <= &c.x && &c.x <= hi_x && lo_y <= &c.y && &c.y <= hi_y
}

/// Projects `e` along `direction`, failing unless the projection is
/// regular: transverse double points only, none at a vertex or bend.
pub fn project(e: &SpatialEmbedding, direction: &RationalPoint) -> Result<ProjectedDiagram, SpatialError> {
    if direction.is_zero() {
        return Err(SpatialError::NonRegular("zero direction".into()));
    }
    let d = direction;
    let k = (0..3).min_by_key(|&i| d.0[i].abs()).unwrap();
    let mut axis = RationalPoint::zero();
    axis.0[k] = BigRational::from_integer(1.into());
    let u = d.cross(&axis);
    let w = d.cross(&u);

    let flat: BTreeMap<EdgeId, Vec<Flat>> = e
        .paths
        .iter()
        .map(|(id, path)| (*id, path.iter().map(|p| flatten(p, &u, &w, d)).collect()))
        .collect();
    let segments = e.segments();
    let ends = |s: &super::Segment<'_>| {
        let f = &flat[&s.edge];
        (&f[s.index], &f[s.index + 1])
    };
    let irregular = |m: String| Err(SpatialError::NonRegular(m));

    let mut crossings = Vec::new();
    let mut points = BTreeSet::new();
    for (i, s) in segments.iter().enumerate() {
        let (p0, p1) = ends(s);
        for t in &segments[i + 1..] {
            let (q0, q1) = ends(t);
            if let Some((si, ti)) = s.shared_corner(t) {
                // adjacent at a corner: they may not fold onto each other
                let (a_far, a_near) = if si == 0 { (p1, p0) } else { (p0, p1) };
                let b_far = if ti == 0 { q1 } else { q0 };
                if orient(a_near, a_far, b_far) == Ordering::Equal {
                    let ax = &a_far.x - &a_near.x;
                    let ay = &a_far.y - &a_near.y;
                    let bx = &b_far.x - &a_near.x;
                    let by = &b_far.y - &a_near.y;
                    if (ax * bx + ay * by).is_positive() {
                        return irregular(format!("edges {} and {} overlap in projection", s.edge, t.edge));
                    }
                }
                continue;
            }

            let o = [orient(p0, p1, q0), orient(p0, p1, q1), orient(q0, q1, p0), orient(q0, q1, p1)];
            let touching = [
                (o[0], p0, p1, q0, t),
                (o[1], p0, p1, q1, t),
                (o[2], q0, q1, p0, s),
                (o[3], q0, q1, p1, s),
            ];
            for (oi, a, b, c, owner) in touching {
                if oi == Ordering::Equal && within(a, b, c) {
                    return irregular(format!(
                        "a corner of edge {} projects onto edge {}",
                        owner.edge,
                        if owner.edge == s.edge { t.edge } else { s.edge }
                    ));
                }
            }
            if o.contains(&Ordering::Equal) || o[0] == o[1] || o[2] == o[3] {
                continue;
            }

            let rx = &p1.x - &p0.x;
            let ry = &p1.y - &p0.y;
            let sx = &q1.x - &q0.x;
            let sy = &q1.y - &q0.y;
            let gx = &q0.x - &p0.x;
            let gy = &q0.y - &p0.y;
            let denom = cross2(&rx, &ry, &sx, &sy);
            let ta = cross2(&gx, &gy, &sx, &sy) / &denom;
            let tb = cross2(&gx, &gy, &rx, &ry) / &denom;
            let depth_a = &p0.depth + &ta * (&p1.depth - &p0.depth);
            let depth_b = &q0.depth + &tb * (&q1.depth - &q0.depth);
            let point = (&p0.x + &ta * &rx, &p0.y + &ta * &ry);
            if !points.insert(point) {
                return irregular("three strands meet at one point".into());
            }
            let a_ref = SegmentRef { edge: s.edge, segment: s.index, param: ta };
            let b_ref = SegmentRef { edge: t.edge, segment: t.index, param: tb };
            let (over, under, sign) = match depth_a.cmp(&depth_b) {
                Ordering::Greater => (a_ref, b_ref, cross2(&rx, &ry, &sx, &sy)),
                Ordering::Less => (b_ref, a_ref, cross2(&sx, &sy, &rx, &ry)),
                Ordering::Equal => {
                    return Err(SpatialError::Invalid(format!(
                        "edges {} and {} intersect",
                        s.edge, t.edge
                    )))
                }
            };
            let sign = if sign.is_positive() { 1 } else { -1 };
            crossings.push(Crossing { over, under, sign });
        }
    }

    for v in e.graph.vertices().filter(|&v| e.graph.degree(v) == 0) {
        let pv = flatten(&e.positions[&v], &u, &w, d);
        for s in &segments {
            let (a, b) = ends(s);
            if orient(a, b, &pv) == Ordering::Equal && within(a, b, &pv) {
                return irregular(format!("vertex {v} projects onto edge {}", s.edge));
            }
        }
    }

    let mut tally: BTreeMap<(EdgeId, EdgeId), (i64, u64)> = BTreeMap::new();
    for c in &crossings {
        let t = tally.entry((c.over.edge, c.under.edge)).or_default();
        t.0 += c.sign as i64;
        t.1 += 1;
    }
    let ends = e.graph.edges().map(|x| (x.id, x.u)).collect();
    Ok(ProjectedDiagram { direction: direction.clone(), crossings, ends, tally })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// The circuit's own traversal order.
    #[default]
    Forward,
    Reverse,
}

impl Orientation {
    fn sign(self) -> i64 {
        match self {
            Orientation::Forward => 1,
            Orientation::Reverse => -1,
        }
    }
}

/// +1 for each edge the circuit traverses along its polyline, -1 against.
fn edge_signs(d: &ProjectedDiagram, c: &Circuit) -> Result<Vec<(EdgeId, i64)>, SpatialError> {
    c.edges()
        .iter()
        .zip(c.vertices())
        .map(|(&e, &from)| {
            let start = d.ends.get(&e).ok_or(SpatialError::UnknownEdge(e))?;
            Ok((e, if *start == from { 1 } else { -1 }))
        })
        .collect()
}

/// Signed count of the crossings where `j` passes over `k`.
pub fn linking_number(
    d: &ProjectedDiagram,
    j: &Circuit,
    k: &Circuit,
    orientations: [Orientation; 2],
) -> Result<i64, SpatialError> {
    if !j.is_disjoint(k) {
        return Err(SpatialError::NotDisjoint);
    }
    let (js, ks) = (edge_signs(d, j)?, edge_signs(d, k)?);
    let mut lk = 0;
    for &(a, sa) in &js {
        for &(b, sb) in &ks {
            if let Some(t) = d.tally.get(&(a, b)) {
                lk += sa * sb * t.0;
            }
        }
    }
    Ok(lk * orientations[0].sign() * orientations[1].sign())
}

/// Parity of the number of crossings where `j` passes over `k`.
pub fn omega_pair(d: &ProjectedDiagram, j: &Circuit, k: &Circuit) -> Result<u8, SpatialError> {
    if !j.is_disjoint(k) {
        return Err(SpatialError::NotDisjoint);
    }
    let mut n = 0;
    for a in j.edges() {
        if !d.ends.contains_key(a) {
            return Err(SpatialError::UnknownEdge(*a));
        }
        for b in k.edges() {
            n += d.tally.get(&(*a, *b)).map_or(0, |t| t.1);
        }
    }
    Ok((n % 2) as u8)
}

/// Up to `count` regular projections of `e` along pairwise non-parallel
/// directions drawn from a generator seeded with `seed`.
pub fn regular_projections(
    e: &SpatialEmbedding,
    count: usize,
    seed: u64,
) -> Result<Vec<ProjectedDiagram>, SpatialError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ProjectedDiagram> = Vec::with_capacity(count);
    let mut last_error = String::from("no attempt made");
    let attempts = DIRECTION_ATTEMPTS * count.max(1);
    for _ in 0..attempts {
        if out.len() == count {
            return Ok(out);
        }
        let mut draw = || rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE);
        let d = RationalPoint::from_ints(draw(), draw(), draw());
        if d.is_zero() || out.iter().any(|x| x.direction.cross(&d).is_zero()) {
            continue;
        }
        match project(e, &d) {
            Ok(diagram) => out.push(diagram),
            Err(err @ SpatialError::Invalid(_)) => return Err(err),
            Err(err) => last_error = err.to_string(),
        }
    }
    if out.len() == count {
        Ok(out)
    } else {
        Err(SpatialError::RetryLimit(attempts, last_error))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairOmega {
    /// Traversal order of each circuit, which fixes the orientation of `lk`.
    pub j: Vec<VertexId>,
    pub k: Vec<VertexId>,
    pub lk: i64,
    pub omega: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub directions: Vec<RationalPoint>,
    pub pairs: Vec<PairOmega>,
    pub total: u8,
}

impl OmegaReport {
    /// Number of pairs with odd linking number.
    pub fn odd_pairs(&self) -> usize {
        self.pairs.iter().filter(|p| p.omega == 1).count()
    }
}

/// `omega(G)` of an embedding: the sum over unordered pairs of disjoint
/// circuits of `lk mod 2`. Computed on one regular projection and checked
/// pair by pair against a second.
pub fn omega_graph(e: &SpatialEmbedding) -> Result<OmegaReport, SpatialError> {
    omega_graph_with(e, None)
}

/// As [`omega_graph`], with `direction` as the first projection.
pub fn omega_graph_with(
    e: &SpatialEmbedding,
    direction: Option<&RationalPoint>,
) -> Result<OmegaReport, SpatialError> {
    let pairs = disjoint_circuit_pairs(e.graph(), DEFAULT_CIRCUIT_CAP)?;
    let diagrams = match direction {
        None => regular_projections(e, 2, DIRECTION_SEED)?,
        Some(d) => {
            let first = project(e, d)?;
            let mut rng_seed = DIRECTION_SEED;
            loop {
                let second = regular_projections(e, 1, rng_seed)?.remove(0);
                if !second.direction.cross(d).is_zero() {
                    break vec![first, second];
                }
                rng_seed += 1;
            }
        }
    };
    let forward = [Orientation::Forward; 2];
    let mut table = Vec::with_capacity(pairs.len());
    let mut total = 0u8;
    for (j, k) in &pairs {
        let lk = linking_number(&diagrams[0], j, k, forward)?;
        let check = linking_number(&diagrams[1], j, k, forward)?;
        if lk != check {
            return Err(SpatialError::Inconsistent(format!(
                "lk({:?}, {:?}) is {lk} along {} but {check} along {}",
                j.vertices(),
                k.vertices(),
                diagrams[0].direction,
                diagrams[1].direction
            )));
        }
        let omega = lk.rem_euclid(2) as u8;
        total ^= omega;
        table.push(PairOmega { j: j.vertices().to_vec(), k: k.vertices().to_vec(), lk, omega });
    }
    Ok(OmegaReport {
        directions: diagrams.into_iter().map(|d| d.direction).collect(),
        pairs: table,
        total,
    })
}
