//! The acceptance suite: eight criteria, each reduced to a PASS/FAIL line
//! and a JSON detail record.

pub mod oracle;

use std::time::{Duration, Instant};

use linkless::graph::{builtin, disjoint_circuit_pairs, MultiGraph, DEFAULT_CIRCUIT_CAP};
use linkless::minor::{
    classify, has_minor, minor_minimality_report, verify_minor_model, ClassifierOptions, Verdict, DEFAULT_BUDGET,
};
use linkless::moves::{delta_y, petersen_family, TriangleSelector};
use linkless::spatial::{
    conway_gordon_experiment, edge_swap_check, linking_number, random_embedding, regular_projections, Orientation,
    SpatialEmbedding, SpatialError,
};
use serde::Serialize;
use serde_json::{json, Value};

use oracle::{isomorphic, MinorOracle, SmallGraph, MAX_VERTICES};

pub const SEED: u64 = 0;
pub const K6_TRIALS: usize = 1000;
pub const K331_TRIALS: usize = 500;
pub const REROUTE_TRIALS: usize = 200;
pub const PROJECTION_EMBEDDINGS: usize = 50;
pub const PROJECTION_DIRECTIONS: usize = 10;

#[derive(Debug, Clone, Default)]
pub struct AcceptanceConfig {
    /// Overrides the trial count of every randomized criterion.
    pub trials: Option<usize>,
    /// Included in criteria 3 (when it embeds K6 or K3,3,1) and 8.
    pub embedding: Option<SpatialEmbedding>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "{} {}. {} ({:.1}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AcceptanceReport {
    pub seed: u64,
    pub trials: Option<usize>,
    pub criteria: Vec<Criterion>,
    pub pass: bool,
}

fn timed(id: u8, title: &'static str, f: impl FnOnce() -> Result<(bool, Value), String>) -> Criterion {
    let started = Instant::now();
    let (pass, detail) = f().unwrap_or_else(|e| (false, json!({ "error": e })));
    Criterion { id, title, pass, detail, elapsed: started.elapsed() }
}

fn text<E: ToString>(e: E) -> String {
    e.to_string()
}

pub fn run_acceptance(config: &AcceptanceConfig) -> AcceptanceReport {
    let t = config.trials;
    let extra = config.embedding.as_ref();
    let criteria = vec![
        conway_gordon(1, "K6", t.unwrap_or(K6_TRIALS)),
        conway_gordon(2, "K3,3,1", t.unwrap_or(K331_TRIALS)),
        edge_invariance(t.unwrap_or(REROUTE_TRIALS), extra),
        petersen_family_check(),
        classifier_table(),
        minimality(),
        oracle_equivalence(),
        projection_independence(t.unwrap_or(PROJECTION_EMBEDDINGS), extra),
    ];
    let pass = criteria.iter().all(|c| c.pass);
    AcceptanceReport { seed: SEED, trials: t, criteria, pass }
}

/// Criteria 1 and 2: omega = 1 on every random embedding.
pub fn conway_gordon(id: u8, graph: &str, trials: usize) -> Criterion {
    let title = if id == 1 {
        "omega(K6) = 1 on every random embedding"
    } else {
        "omega(K3,3,1) = 1 on every random embedding"
    };
    timed(id, title, || {
        let g = builtin(graph).map_err(text)?;
        let r = conway_gordon_experiment(&g, trials, SEED).map_err(text)?;
        Ok((r.count(1) == trials, serde_json::to_value(&r).unwrap()))
    })
}

/// Criterion 3: rerouting an edge never changes omega, and the parity
/// bookkeeping through the loop `D = e + e'` balances.
pub fn edge_invariance(trials: usize, extra: Option<&SpatialEmbedding>) -> Criterion {
    timed(3, "edge reroutes preserve omega on K6 and K3,3,1", || {
        let mut runs = Vec::new();
        for name in ["K6", "K3,3,1"] {
            let e = random_embedding(&builtin(name).map_err(text)?, SEED).map_err(text)?;
            runs.push(edge_swap_check(&e, trials, SEED).map_err(text)?);
        }
        if let Some(e) = extra {
            match edge_swap_check(e, trials, SEED) {
                Ok(r) => runs.push(r),
                Err(SpatialError::Unsupported(_)) => {}
                Err(err) => return Err(err.to_string()),
            }
        }
        let pass = runs.iter().all(|r| r.passed() && r.trials == trials);
        Ok((pass, serde_json::to_value(&runs).unwrap()))
    })
}

/// Criterion 4: seven pairwise non-isomorphic 15-edge graphs, closed under
/// Delta-Y.
pub fn petersen_family_check() -> Criterion {
    timed(4, "Petersen family: 7 members, 15 edges each, closed under Delta-Y", || {
        let family = petersen_family();
        let members = family.members();
        let mut problems = Vec::new();
        if members.len() != 7 {
            problems.push(format!("{} members", members.len()));
        }
        for m in members {
            if m.graph.edge_count() != 15 {
                problems.push(format!("{} has {} edges", m.name, m.graph.edge_count()));
            }
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if isomorphic(&a.graph, &b.graph) {
                    problems.push(format!("{} and {} are isomorphic", a.name, b.name));
                }
            }
        }
        for name in ["K6", "K3,3,1"] {
            let g = builtin(name).map_err(text)?;
            if !members.iter().any(|m| isomorphic(&m.graph, &g)) {
                problems.push(format!("{name} missing"));
            }
        }
        if !members.iter().any(|m| m.graph.vertex_count() == 10 && m.graph.triangles().is_empty()) {
            problems.push("no triangle-free member on 10 vertices".into());
        }
        let mut moves = 0;
        for m in members {
            for [a, b, c] in m.graph.triangles() {
                let child = delta_y(&m.graph, TriangleSelector::new(a, b, c).map_err(text)?).map_err(text)?;
                moves += 1;
                if !members.iter().any(|x| isomorphic(&x.graph, &child)) {
                    problems.push(format!("Delta-Y on {a},{b},{c} of {} leaves the family", m.name));
                }
            }
        }
        let detail = json!({
            "members": members.iter().map(|m| json!({
                "name": m.name,
                "vertices": m.graph.vertex_count(),
                "edges": m.graph.edge_count(),
                "triangles": m.graph.triangles().len(),
            })).collect::<Vec<_>>(),
            "delta_y_moves_checked": moves,
            "problems": problems,
        });
        Ok((problems.is_empty(), detail))
    })
}

/// Criterion 5: fixed verdicts on named graphs.
pub fn classifier_table() -> Criterion {
    const TABLE: [(&str, Verdict); 8] = [
        ("K6", Verdict::Linked),
        ("K3,3,1", Verdict::Linked),
        ("petersen", Verdict::Linked),
        ("K7", Verdict::Linked),
        ("K4,4", Verdict::Linked),
        ("K5", Verdict::Unlinked),
        ("K3,3", Verdict::Unlinked),
        ("grid4x4", Verdict::Unlinked),
    ];
    timed(5, "classifier verdicts on named graphs", || {
        let mut rows = Vec::new();
        let mut pass = true;
        for (name, expected) in TABLE {
            let g = builtin(name).map_err(text)?;
            let v = classify(&g, &ClassifierOptions::default()).map_err(text)?;
            let witness_ok = v.witness.as_ref().is_none_or(|w| {
                let member = &petersen_family().get(&w.member).unwrap().graph;
                verify_minor_model(&g, member, &w.model).is_valid()
            });
            pass &= v.verdict == expected && witness_ok;
            rows.push(json!({
                "graph": name,
                "expected": expected,
                "verdict": v.verdict,
                "witness": v.witness.as_ref().map(|w| &w.member),
                "witness_valid": witness_ok,
                "nodes": v.stats.nodes,
            }));
        }
        Ok((pass, Value::Array(rows)))
    })
}

/// Criterion 6: no single-edge deletion or contraction of a member is
/// linked. Searched without the edge-count shortcut.
pub fn minimality() -> Criterion {
    timed(6, "every single-edge deletion and contraction of a member is unlinked", || {
        let options = ClassifierOptions { budget: DEFAULT_BUDGET, prefilter: false };
        let mut rows = Vec::new();
        let mut pass = true;
        for m in petersen_family().members() {
            let r = minor_minimality_report(&m.graph, &options).map_err(text)?;
            let children = r.deletions.iter().chain(&r.contractions);
            let unlinked = children.clone().filter(|c| c.verdict == Verdict::Unlinked).count();
            let total = children.count();
            pass &= r.minor_minimal && unlinked == total && total == 30;
            rows.push(json!({ "member": m.name, "children": total, "unlinked": unlinked }));
        }
        Ok((pass, Value::Array(rows)))
    })
}

/// Criterion 7: `has_minor` against the deletion/contraction closure oracle
/// on every labelled simple graph with at most six vertices.
pub fn oracle_equivalence() -> Criterion {
    timed(7, "minor search agrees with the exhaustive oracle on graphs with at most 6 vertices", || {
        let mut oracle = MinorOracle::new();
        let targets: Vec<(&str, MultiGraph, SmallGraph)> = ["K4", "K5", "K3,3", "C4"]
            .into_iter()
            .map(|n| {
                let g = builtin(n).unwrap();
                let s = SmallGraph::from_graph(&g).unwrap();
                (n, g, s)
            })
            .collect();
        let mut graphs = 0usize;
        let mut positives = vec![0usize; targets.len()];
        let mut disagreements = Vec::new();
        for n in 0..=MAX_VERTICES {
            let m = n * n.saturating_sub(1) / 2;
            for mask in 0..1u32 << m {
                let small = SmallGraph::from_mask(n, mask);
                let g = small.to_graph();
                graphs += 1;
                for (t, (name, h, hs)) in targets.iter().enumerate() {
                    let expected = oracle.has_minor(&small, hs);
                    let found = has_minor(&g, h, DEFAULT_BUDGET).map_err(text)?;
                    let valid = found.as_ref().is_none_or(|model| verify_minor_model(&g, h, model).is_valid());
                    if found.is_some() != expected || !valid {
                        disagreements.push(json!({ "graph": g.to_edge_list(), "target": name, "expected": expected }));
                    }
                    positives[t] += expected as usize;
                }
            }
        }
        let detail = json!({
            "graphs": graphs,
            "targets": targets.iter().map(|t| t.0).collect::<Vec<_>>(),
            "containing": positives,
            "disagreements": disagreements.iter().take(20).collect::<Vec<_>>(),
            "disagreement_count": disagreements.len(),
        });
        Ok((disagreements.is_empty(), detail))
    })
}

/// Criterion 8: linking numbers of oriented circuit pairs agree across ten
/// regular projections of each embedding.
pub fn projection_independence(embeddings: usize, extra: Option<&SpatialEmbedding>) -> Criterion {
    timed(8, "linking numbers agree across 10 projections of each K6 embedding", || {
        let k6 = builtin("K6").map_err(text)?;
        let mut samples = Vec::with_capacity(embeddings + 1);
        for i in 0..embeddings {
            samples.push(random_embedding(&k6, SEED ^ i as u64).map_err(text)?);
        }
        samples.extend(extra.cloned());
        let mut comparisons = 0usize;
        let mut mismatches = Vec::new();
        for (i, e) in samples.iter().enumerate() {
            let pairs = disjoint_circuit_pairs(e.graph(), DEFAULT_CIRCUIT_CAP).map_err(text)?;
            let diagrams = regular_projections(e, PROJECTION_DIRECTIONS, SEED ^ i as u64).map_err(text)?;
            for (j, k) in &pairs {
                let mut values = Vec::with_capacity(diagrams.len());
                for d in &diagrams {
                    values.push(linking_number(d, j, k, [Orientation::Forward; 2]).map_err(text)?);
                }
                comparisons += values.len() - 1;
                if values.windows(2).any(|w| w[0] != w[1]) {
                    mismatches.push(json!({ "embedding": i, "j": j.vertices(), "k": k.vertices(), "lk": values }));
                }
            }
        }
        let detail = json!({
            "embeddings": samples.len(),
            "directions": PROJECTION_DIRECTIONS,
            "comparisons": comparisons,
            "mismatches": mismatches,
        });
        Ok((mismatches.is_empty(), detail))
    })
}
