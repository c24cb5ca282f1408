//! Random embeddings and the Monte Carlo checks built on them.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::diagram::{omega_graph, omega_pair, regular_projections};
use super::{RationalPoint, SpatialEmbedding, SpatialError};
use crate::graph::{disjoint_circuit_pairs, Circuit, EdgeId, MultiGraph, DEFAULT_CIRCUIT_CAP};
use crate::moves::petersen_family;

/// Coordinates are drawn from `[-CUBE_HALF_SIDE, CUBE_HALF_SIDE]`.
pub const CUBE_HALF_SIDE: i64 = 1_000_000;
const EMBEDDING_ATTEMPTS: usize = 32;
const REROUTE_ATTEMPTS: usize = 500;

fn random_point(rng: &mut ChaCha8Rng) -> RationalPoint {
    let mut c = || rng.gen_range(-CUBE_HALF_SIDE..=CUBE_HALF_SIDE);
    RationalPoint::from_ints(c(), c(), c())
}

/// Straight-line embedding with vertices at random lattice points of the
/// cube. A degenerate draw is replaced by the draw for `seed + 1`, and so on.
pub fn random_embedding(g: &MultiGraph, seed: u64) -> Result<SpatialEmbedding, SpatialError> {
    if g.has_loops() {
        return Err(SpatialError::Loop);
    }
    if !g.is_simple() {
        return Err(SpatialError::ParallelEdges);
    }
    let mut last = String::new();
    for attempt in 0..EMBEDDING_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let positions = g.vertices().map(|v| (v, random_point(&mut rng))).collect();
        match SpatialEmbedding::straight(g.clone(), positions) {
            Ok(e) => return Ok(e),
            Err(err) => last = err.to_string(),
        }
    }
    Err(SpatialError::RetryLimit(EMBEDDING_ATTEMPTS, last))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub graph: String,
    pub trials: usize,
    pub seed: u64,
    /// omega(G) value -> number of trials
    pub omega_counts: BTreeMap<u8, usize>,
    /// number of pairs with odd lk -> number of trials
    pub odd_pair_counts: BTreeMap<usize, usize>,
}

impl ExperimentReport {
    pub fn count(&self, omega: u8) -> usize {
        self.omega_counts.get(&omega).copied().unwrap_or(0)
    }
}

#[cfg(feature = "parallel")]
fn map_trials<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_trials<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Computes `omega` for `trials` independent random embeddings of `g`;
/// trial `i` uses seed `seed ^ i`.
pub fn conway_gordon_experiment(
    g: &MultiGraph,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, SpatialError> {
    disjoint_circuit_pairs(g, DEFAULT_CIRCUIT_CAP)?;
    let results = map_trials(trials, |i| {
        let e = random_embedding(g, seed ^ i as u64)?;
        let report = omega_graph(&e)?;
        Ok::<_, SpatialError>((report.total, report.odd_pairs()))
    });
    let mut omega_counts = BTreeMap::new();
    let mut odd_pair_counts = BTreeMap::new();
    for r in results {
        let (total, odd) = r?;
        *omega_counts.entry(total).or_insert(0) += 1;
        *odd_pair_counts.entry(odd).or_insert(0) += 1;
    }
    Ok(ExperimentReport {
        graph: g.name().map_or_else(|| g.to_edge_list(), str::to_string),
        trials,
        seed,
        omega_counts,
        odd_pair_counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapFailure {
    pub trial: usize,
    pub edge: EdgeId,
    pub message: String,
    pub old_path: Vec<RationalPoint>,
    pub new_path: Vec<RationalPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeSwapReport {
    pub graph: String,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose reroute left `omega` unchanged.
    pub preserved: usize,
    /// Pairs checked against `w(J', K) = w(J, K) + w(D, K)`.
    pub parity_checks: usize,
    pub parity_passed: usize,
    /// Trials where the complementary circuits link `D` an even number of times.
    pub even_cover_passed: usize,
    /// Proposed reroutes rejected as degenerate.
    pub retries: usize,
    pub omega: u8,
    pub failures: Vec<SwapFailure>,
}

impl EdgeSwapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.preserved == self.trials
            && self.parity_passed == self.parity_checks
            && self.even_cover_passed == self.trials
    }
}

/// Replaces a random edge `e` by a random arc `e'` with one or two bends,
/// `trials` times in succession, checking that `omega` is unchanged.
///
/// Each accepted arc is held next to the old route as a parallel edge, so
/// one projection shows `J` (through `e`), `J'` (through `e'`), the loop
/// `D = e + e'` and every complementary circuit `K` together. There the
/// parities must satisfy `w(J', K) = w(J, K) + w(D, K)` for each pair, and
/// the sum of `w(K, D)` over all pairs meeting `e` must be even.
pub fn edge_swap_check(e: &SpatialEmbedding, trials: usize, seed: u64) -> Result<EdgeSwapReport, SpatialError> {
    swap_check(e, trials, seed, random_reroute)
}

/// A random edge and a replacement arc with one or two bends in the cube.
fn random_reroute(rng: &mut ChaCha8Rng, current: &SpatialEmbedding) -> (EdgeId, Vec<RationalPoint>) {
    let edges: Vec<EdgeId> = current.graph().edges().map(|x| x.id).collect();
    let edge = *edges.choose(rng).unwrap();
    let old = current.path(edge).unwrap();
    let bends = rng.gen_range(1..=2);
    let mut new = vec![old[0].clone()];
    new.extend((0..bends).map(|_| random_point(rng)));
    new.push(old[old.len() - 1].clone());
    (edge, new)
}

fn swap_check(
    e: &SpatialEmbedding,
    trials: usize,
    seed: u64,
    mut propose: impl FnMut(&mut ChaCha8Rng, &SpatialEmbedding) -> (EdgeId, Vec<RationalPoint>),
) -> Result<EdgeSwapReport, SpatialError> {
    let family = petersen_family();
    let graph = e.graph();
    match family.member_of(graph).map(|m| m.name.as_str()) {
        Some("K6" | "K3,3,1") => {}
        _ => {
            return Err(SpatialError::Unsupported(
                "edge swaps are checked on K6 and K3,3,1 only".into(),
            ))
        }
    }
    let pairs = disjoint_circuit_pairs(graph, DEFAULT_CIRCUIT_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = e.clone();
    let start = omega_graph(&current)?.total;
    let mut omega = start;

    let mut report = EdgeSwapReport {
        graph: graph.name().map_or_else(|| graph.to_edge_list(), str::to_string),
        trials,
        seed,
        preserved: 0,
        parity_checks: 0,
        parity_passed: 0,
        even_cover_passed: 0,
        retries: 0,
        omega: start,
        failures: Vec::new(),
    };

    for trial in 0..trials {
        let mut accepted = None;
        for _ in 0..REROUTE_ATTEMPTS {
            let (edge, new) = propose(&mut rng, &current);
            let old = current.path(edge).unwrap().to_vec();
            let attempt = (|| {
                let after = current.reroute_edge(edge, new.clone())?;
                let (both, spare) = after.with_parallel_edge(edge, old.clone())?;
                let diagram = regular_projections(&both, 1, rng.gen())?.remove(0);
                Ok::<_, SpatialError>((after, spare, diagram))
            })();
            match attempt {
                Ok(found) => {
                    accepted = Some((edge, old, new, found));
                    break;
                }
                Err(SpatialError::Invalid(_) | SpatialError::RetryLimit(..)) => report.retries += 1,
                Err(err) => return Err(err),
            }
        }
        let Some((edge, old, new, (after, spare, diagram))) = accepted else {
            return Err(SpatialError::RetryLimit(REROUTE_ATTEMPTS, "no valid reroute found".into()));
        };
        let fail = |message: String| SwapFailure {
            trial,
            edge,
            message,
            old_path: old.clone(),
            new_path: new.clone(),
        };

        let ends = graph.edge(edge).unwrap();
        let loop_d = Circuit::new(vec![edge, spare], vec![ends.u, ends.v]);
        let mut cover = 0u8;
        let mut change = 0u8;
        for (a, b) in &pairs {
            let (j, k) = if a.contains_edge(edge) {
                (a, b)
            } else if b.contains_edge(edge) {
                (b, a)
            } else {
                continue;
            };
            let j_old = j.with_edge_replaced(edge, spare);
            let before = omega_pair(&diagram, &j_old, k)?;
            let after_bit = omega_pair(&diagram, j, k)?;
            let via_d = omega_pair(&diagram, &loop_d, k)?;
            report.parity_checks += 1;
            if (before + via_d) % 2 == after_bit {
                report.parity_passed += 1;
            } else {
                report.failures.push(fail(format!(
                    "parity identity fails for J={:?}, K={:?}: {before} + {via_d} != {after_bit}",
                    j.vertices(),
                    k.vertices()
                )));
            }
            cover ^= omega_pair(&diagram, k, &loop_d)?;
            change ^= before ^ after_bit;
        }
        if cover == 0 {
            report.even_cover_passed += 1;
        } else {
            report.failures.push(fail("complementary circuits link D an odd number of times".into()));
        }

        let next = omega_graph(&after)?.total;
        if next == omega && change == 0 {
            report.preserved += 1;
        } else {
            report.failures.push(fail(format!(
                "omega changed from {omega} to {next} (pairwise change {change})"
            )));
        }
        omega = next;
        current = after;
    }
    report.omega = omega;
    Ok(report)
}
