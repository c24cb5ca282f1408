mod common;

use common::{from_mask, pairs, random_graph, rng};
use linkless::graph::*;
use linkless::minor::*;
use linkless::moves::{delta_y, petersen_family, TriangleSelector};
use rand::seq::SliceRandom;
use rand::Rng;

/// Minor test by trying every map from V(G) to V(H) plus "unused": each
/// H-vertex needs a nonempty connected preimage, and each H-edge needs a
/// G-edge between the two preimages.
fn brute_has_minor(g: &MultiGraph, h: &MultiGraph) -> bool {
    let gv: Vec<VertexId> = g.vertices().collect();
    let hv: Vec<VertexId> = h.vertices().collect();
    let k = hv.len();
    let g_edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| !e.is_loop())
        .map(|e| (gv.binary_search(&e.u).unwrap(), gv.binary_search(&e.v).unwrap()))
        .collect();
    let h_edges: Vec<(usize, usize)> = h
        .edges()
        .map(|e| (hv.binary_search(&e.u).unwrap() + 1, hv.binary_search(&e.v).unwrap() + 1))
        .collect();
    let mut label = vec![0usize; gv.len()];
    loop {
        let ok = (1..=k).all(|b| {
            let members: Vec<usize> = (0..gv.len()).filter(|&i| label[i] == b).collect();
            if members.is_empty() {
                return false;
            }
            let mut seen = vec![members[0]];
            let mut grew = true;
            while grew {
                grew = false;
                for &(x, y) in &g_edges {
                    for (p, q) in [(x, y), (y, x)] {
                        if label[q] == b && seen.contains(&p) && !seen.contains(&q) {
                            seen.push(q);
                            grew = true;
                        }
                    }
                }
            }
            seen.len() == members.len()
        }) && h_edges.iter().all(|&(a, b)| {
            g_edges
                .iter()
                .any(|&(x, y)| (label[x], label[y]) == (a, b) || (label[x], label[y]) == (b, a))
        });
        if ok {
            return true;
        }
        // next label vector in base k + 1
        let mut i = 0;
        loop {
            if i == label.len() {
                return false;
            }
            label[i] += 1;
            if label[i] <= k {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

fn targets() -> Vec<MultiGraph> {
    ["K3", "C4", "K4", "K1,3", "P4", "K2,3", "K5", "C5"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect()
}

#[test]
fn agrees_with_branch_set_oracle() {
    let mut r = rng(11);
    for _ in 0..120 {
        let n = r.gen_range(3..=6);
        let p = r.gen_range(0.3..0.9);
        let g = random_graph(&mut r, n, p);
        for h in targets() {
            let found = has_minor(&g, &h, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                found.is_some(),
                brute_has_minor(&g, &h),
                "{} in\n{}",
                h.name().unwrap(),
                g.to_edge_list()
            );
            if let Some(model) = found {
                let check = verify_minor_model(&g, &h, &model);
                assert!(check.is_valid(), "{:?}", check.reasons);
            }
        }
    }
}

#[test]
fn models_survive_disconnected_hosts() {
    let mut g = builtin("K4").unwrap();
    for (a, b) in [(10, 11), (11, 12), (12, 10)] {
        g.add_edge(a, b);
    }
    let model = has_minor(&g, &builtin("C4").unwrap(), DEFAULT_BUDGET).unwrap().unwrap();
    assert!(verify_minor_model(&g, &builtin("C4").unwrap(), &model).is_valid());
    assert!(has_minor(&g, &builtin("K5").unwrap(), DEFAULT_BUDGET).unwrap().is_none());
}

#[test]
fn errors_are_distinct_from_no() {
    let mut two = builtin("K3").unwrap();
    two.add_edge(7, 8);
    assert_eq!(
        has_minor(&builtin("K6").unwrap(), &two, DEFAULT_BUDGET),
        Err(MinorError::DisconnectedTarget)
    );
    assert!(matches!(
        has_minor(&builtin("grid4x4").unwrap(), &builtin("K5").unwrap(), 10),
        Err(MinorError::BudgetExhausted(10))
    ));
    let tiny = ClassifierOptions { budget: 5, prefilter: true };
    let verdict = classify(&builtin("grid4x4").unwrap(), &tiny).unwrap();
    assert_eq!(verdict.verdict, Verdict::Unknown);
    assert!(!verdict.stats.budget_exhausted.is_empty());
}

#[test]
fn bad_models_are_rejected() {
    let k4 = builtin("K4").unwrap();
    let k3 = builtin("K3").unwrap();
    let mut model = has_minor(&k4, &k3, DEFAULT_BUDGET).unwrap().unwrap();
    assert!(verify_minor_model(&k4, &k3, &model).is_valid());
    let first = *model.branch_sets.keys().next().unwrap();
    let second = *model.branch_sets.keys().nth(1).unwrap();
    let stolen = model.branch_sets[&second][0];
    model.branch_sets.get_mut(&first).unwrap().push(stolen);
    assert!(!verify_minor_model(&k4, &k3, &model).is_valid());
}

#[test]
fn monotone_under_minors() {
    let mut r = rng(12);
    let h = builtin("K4").unwrap();
    for _ in 0..100 {
        let n = r.gen_range(5..=7);
        let g = random_graph(&mut r, n, 0.5);
        let here = has_minor(&g, &h, DEFAULT_BUDGET).unwrap().is_some();
        let Some(e) = g.edges().map(|e| e.id).collect::<Vec<_>>().choose(&mut r).copied() else {
            continue;
        };
        let deleted = has_minor(&g.delete_edge(e).unwrap(), &h, DEFAULT_BUDGET).unwrap().is_some();
        let contracted = has_minor(&g.contract_edge(e, true).unwrap(), &h, DEFAULT_BUDGET).unwrap().is_some();
        assert!(here || !deleted, "deleting an edge created a minor");
        assert!(here || !contracted, "contracting an edge created a minor");
        let mut bigger = g.clone();
        let (a, b) = *pairs(n).choose(&mut r).unwrap();
        bigger.add_edge(a, b);
        assert!(!here || has_minor(&bigger.simplified(), &h, DEFAULT_BUDGET).unwrap().is_some());
    }
}

#[test]
fn classifier_basics() {
    for name in ["K6", "K3,3,1", "petersen"] {
        let g = builtin(name).unwrap();
        let v = is_intrinsically_linked(&g).unwrap();
        assert_eq!(v.verdict, Verdict::Linked, "{name}");
        let w = v.witness.unwrap();
        let member = &petersen_family().get(&w.member).unwrap().graph;
        assert!(verify_minor_model(&g, member, &w.model).is_valid());
    }
    for name in ["K5", "K3,3", "C6"] {
        assert_eq!(is_intrinsically_linked(&builtin(name).unwrap()).unwrap().verdict, Verdict::Unlinked);
    }
}

/// Linked graphs stay linked under Delta-Y moves.
#[test]
fn delta_y_preserves_linking() {
    let mut r = rng(13);
    let family = petersen_family();
    for _ in 0..30 {
        let member = family.members().choose(&mut r).unwrap();
        let mut g = member.graph.clone();
        let top = g.max_vertex_id().unwrap();
        for extra in 1..=r.gen_range(0..=2) {
            let v = top + extra;
            let anchors: Vec<VertexId> = g.vertices().collect();
            for &a in anchors.choose_multiple(&mut r, 3) {
                g.add_edge(v, a);
            }
        }
        assert!(is_intrinsically_linked(&g).unwrap().is_linked());
        let triangles = g.triangles();
        let Some(&[a, b, c]) = triangles.choose(&mut r) else {
            continue;
        };
        let h = delta_y(&g, TriangleSelector::new(a, b, c).unwrap()).unwrap();
        assert!(is_intrinsically_linked(&h).unwrap().is_linked(), "{}", g.to_edge_list());
    }
}

#[test]
fn prefilter_never_hides_a_minor() {
    let exhaustive = ClassifierOptions { prefilter: false, ..Default::default() };
    let k6 = canonical_form(&builtin("K6").unwrap()).unwrap();
    for n in 1..=6 {
        let m = pairs(n).len();
        for mask in 0..1u64 << m {
            let g = from_mask(n, mask);
            let linked = classify(&g, &exhaustive).unwrap().is_linked();
            assert_eq!(linked, canonical_form(&g).unwrap() == k6, "{}", g.to_edge_list());
        }
    }
    let mut r = rng(14);
    let mut sampled = 0;
    while sampled < 200 {
        let n = r.gen_range(7..=8);
        let g = random_graph(&mut r, n, 0.45);
        if g.edge_count() >= 15 {
            continue;
        }
        assert!(!classify(&g, &exhaustive).unwrap().is_linked());
        sampled += 1;
    }
}

#[test]
fn minimality_reports() {
    let options = ClassifierOptions::default();
    assert!(minor_minimality_report(&builtin("K6").unwrap(), &options).unwrap().minor_minimal);
    let k7 = minor_minimality_report(&builtin("K7").unwrap(), &options).unwrap();
    assert!(!k7.minor_minimal);
    assert_eq!(k7.deletions.len(), 21);
    assert!(matches!(
        minor_minimality_report(&builtin("K5").unwrap(), &options),
        Err(MinorError::NotLinked)
    ));
}
