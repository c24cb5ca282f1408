use std::f64::consts::PI;

use linkless::graph::{builtin, disjoint_circuit_pairs, Circuit, MultiGraph, DEFAULT_CIRCUIT_CAP};
use linkless::spatial::*;

fn p(x: i64, y: i64, z: i64) -> RationalPoint {
    RationalPoint::from_ints(x, y, z)
}

fn embed(g: MultiGraph, pts: &[(i64, [i64; 3])]) -> SpatialEmbedding {
    let pos = pts.iter().map(|&(v, [x, y, z])| (v, p(x, y, z))).collect();
    SpatialEmbedding::straight(g, pos).unwrap()
}

fn two_triangles(b: [[i64; 3]; 3]) -> Result<SpatialEmbedding, SpatialError> {
    let g = MultiGraph::from_edges([(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]);
    let a = [[2, 0, 0], [-1, 2, 0], [-1, -2, 0]];
    let pos = a
        .iter()
        .chain(&b)
        .enumerate()
        .map(|(i, c)| (i as i64 + 1, p(c[0], c[1], c[2])))
        .collect();
    SpatialEmbedding::straight(g, pos)
}

fn triangles_of(e: &SpatialEmbedding) -> (Circuit, Circuit) {
    let g = e.graph();
    (
        Circuit::from_vertex_cycle(g, &[1, 2, 3]).unwrap(),
        Circuit::from_vertex_cycle(g, &[4, 5, 6]).unwrap(),
    )
}

/// Gauss linking integral of two closed polygons, evaluated segment pair by
/// segment pair with the exact solid-angle formula, in floating point.
fn gauss_lk(j: &[[f64; 3]], k: &[[f64; 3]]) -> f64 {
    fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }
    fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    }
    fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
    fn unit(a: [f64; 3]) -> [f64; 3] {
        let n = dot(a, a).sqrt();
        [a[0] / n, a[1] / n, a[2] / n]
    }
    let mut total = 0.0;
    for a in 0..j.len() {
        let (p1, p2) = (j[a], j[(a + 1) % j.len()]);
        for b in 0..k.len() {
            let (p3, p4) = (k[b], k[(b + 1) % k.len()]);
            let (r13, r14, r23, r24) = (sub(p3, p1), sub(p4, p1), sub(p3, p2), sub(p4, p2));
            let n = [
                unit(cross(r13, r14)),
                unit(cross(r14, r24)),
                unit(cross(r24, r23)),
                unit(cross(r23, r13)),
            ];
            let omega: f64 = (0..4).map(|i| dot(n[i], n[(i + 1) % 4]).clamp(-1.0, 1.0).asin()).sum();
            let s = dot(cross(sub(p4, p3), sub(p2, p1)), r13).signum();
            total += omega * s;
        }
    }
    total / (4.0 * PI)
}

fn polygon(e: &SpatialEmbedding, c: &Circuit) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for (i, &edge) in c.edges().iter().enumerate() {
        let path = e.path(edge).unwrap();
        let from = e.position(c.vertices()[i]).unwrap();
        let mut pts: Vec<_> = path.iter().map(RationalPoint::to_f64).collect();
        if &path[0] != from {
            pts.reverse();
        }
        pts.pop();
        out.extend(pts);
    }
    out
}

#[test]
fn hopf_coordinates_as_stated_touch() {
    // (0, 4/3, 0) lies on both triangles
    let err = two_triangles([[0, 0, 2], [0, 2, -1], [0, -2, -1]]).unwrap_err();
    assert!(matches!(err, SpatialError::Invalid(_)), "{err}");
}

#[test]
fn hopf_pair() {
    let e = two_triangles([[0, 0, 2], [0, 3, -1], [0, -1, -1]]).unwrap();
    let (a, b) = triangles_of(&e);

    // B is vertical, so it collapses along z
    assert!(matches!(project(&e, &p(0, 0, 1)), Err(SpatialError::NonRegular(_))));

    let d = project(&e, &p(1, 2, 1000)).unwrap();
    assert_eq!(d.crossings_between(a.edges(), b.edges()), 2);
    let lk = linking_number(&d, &a, &b, [Orientation::Forward; 2]).unwrap();
    assert_eq!(lk.abs(), 1);
    assert_eq!(omega_pair(&d, &a, &b).unwrap(), 1);
    assert_eq!(omega_pair(&d, &b, &a).unwrap(), 1);
    assert_eq!(linking_number(&d, &b, &a, [Orientation::Forward; 2]).unwrap(), lk);
    assert_eq!(
        linking_number(&d, &a, &b, [Orientation::Reverse, Orientation::Forward]).unwrap(),
        -lk
    );
    assert_eq!(
        linking_number(&d, &a, &b, [Orientation::Reverse, Orientation::Reverse]).unwrap(),
        lk
    );
    let oracle = gauss_lk(&polygon(&e, &a), &polygon(&e, &b));
    assert!((oracle - lk as f64).abs() < 1e-9, "oracle {oracle}, lk {lk}");

    let report = omega_graph(&e).unwrap();
    assert_eq!(report.pairs.len(), 1);
    assert_eq!(report.total, 1);
}

#[test]
fn split_pair() {
    let e = two_triangles([[10, 0, 5], [13, 2, 5], [13, -2, 5]]).unwrap();
    let (a, b) = triangles_of(&e);
    let d = project(&e, &p(0, 0, 1)).unwrap();
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(linking_number(&d, &a, &b, [Orientation::Forward; 2]).unwrap(), 0);
    assert_eq!(omega_pair(&d, &a, &b).unwrap(), 0);
    assert_eq!(omega_graph(&e).unwrap().total, 0);

    // a reflected copy stacked above: a star of six crossings, still unlinked
    let e = two_triangles([[-2, 0, 5], [1, -2, 5], [1, 2, 5]]).unwrap();
    let (a, b) = triangles_of(&e);
    let d = project(&e, &p(0, 0, 1)).unwrap();
    assert_eq!(d.crossing_count(), 6);
    assert_eq!(linking_number(&d, &a, &b, [Orientation::Forward; 2]).unwrap(), 0);
}

#[test]
fn circuits_must_be_disjoint() {
    let e = random_embedding(&builtin("K6").unwrap(), 3).unwrap();
    let g = e.graph();
    let d = regular_projections(&e, 1, 0).unwrap().remove(0);
    let a = Circuit::from_vertex_cycle(g, &[1, 2, 3]).unwrap();
    let b = Circuit::from_vertex_cycle(g, &[3, 4, 5]).unwrap();
    assert_eq!(linking_number(&d, &a, &b, Default::default()), Err(SpatialError::NotDisjoint));
    assert_eq!(omega_pair(&d, &a, &b), Err(SpatialError::NotDisjoint));
}

#[test]
fn lk_matches_gauss_integral() {
    for (name, seeds) in [("K6", 0..20u64), ("K3,3,1", 0..10), ("petersen", 0..5)] {
        let g = builtin(name).unwrap();
        for seed in seeds {
            let e = random_embedding(&g, seed).unwrap();
            let d = regular_projections(&e, 1, seed).unwrap().remove(0);
            for (j, k) in disjoint_circuit_pairs(&g, DEFAULT_CIRCUIT_CAP).unwrap() {
                let lk = linking_number(&d, &j, &k, Default::default()).unwrap();
                let oracle = gauss_lk(&polygon(&e, &j), &polygon(&e, &k));
                assert!(
                    (oracle - lk as f64).abs() < 1e-6,
                    "{name} seed {seed}: lk {lk} vs {oracle} for {:?} {:?}",
                    j.vertices(),
                    k.vertices()
                );
            }
        }
    }
}

#[test]
fn random_embedding_contract() {
    let k6 = builtin("K6").unwrap();
    let a = random_embedding(&k6, 42).unwrap();
    let b = random_embedding(&k6, 42).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, random_embedding(&k6, 43).unwrap());
    for p in a.positions().values() {
        for c in p.to_f64() {
            assert!(c.abs() <= CUBE_HALF_SIDE as f64 && c.fract() == 0.0);
        }
    }
    let mut looped = k6.clone();
    looped.add_edge(1, 1);
    assert_eq!(random_embedding(&looped, 0), Err(SpatialError::Loop));
    let mut doubled = k6;
    doubled.add_edge(1, 2);
    assert_eq!(random_embedding(&doubled, 0), Err(SpatialError::ParallelEdges));
}

#[test]
fn omega_of_small_graphs() {
    for seed in 0..10 {
        let k6 = omega_graph(&random_embedding(&builtin("K6").unwrap(), seed).unwrap()).unwrap();
        assert_eq!(k6.total, 1);
        assert_eq!(k6.pairs.len(), 10);
        assert_eq!(k6.odd_pairs() % 2, 1);
        let k5 = omega_graph(&random_embedding(&builtin("K5").unwrap(), seed).unwrap()).unwrap();
        assert_eq!((k5.total, k5.pairs.len()), (0, 0));
        let k331 = omega_graph(&random_embedding(&builtin("K3,3,1").unwrap(), seed).unwrap()).unwrap();
        assert_eq!(k331.total, 1);
        assert_eq!(k331.pairs.len(), 9);
    }
}

#[test]
fn omega_is_symmetric() {
    let k6 = builtin("K6").unwrap();
    let pairs = disjoint_circuit_pairs(&k6, DEFAULT_CIRCUIT_CAP).unwrap();
    for seed in 0..100 {
        let e = random_embedding(&k6, seed).unwrap();
        let d = regular_projections(&e, 1, seed).unwrap().remove(0);
        for (j, k) in &pairs {
            assert_eq!(omega_pair(&d, j, k).unwrap(), omega_pair(&d, k, j).unwrap());
            let f = [Orientation::Forward; 2];
            assert_eq!(linking_number(&d, j, k, f).unwrap(), linking_number(&d, k, j, f).unwrap());
        }
    }
}

#[test]
fn projection_independence_sample() {
    let k6 = builtin("K6").unwrap();
    let pairs = disjoint_circuit_pairs(&k6, DEFAULT_CIRCUIT_CAP).unwrap();
    for seed in 0..10 {
        let e = random_embedding(&k6, seed).unwrap();
        let diagrams = regular_projections(&e, 5, 1000 + seed).unwrap();
        assert_eq!(diagrams.len(), 5);
        for (j, k) in &pairs {
            let values: Vec<i64> = diagrams
                .iter()
                .map(|d| linking_number(d, j, k, Default::default()).unwrap())
                .collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
        }
    }
}

#[test]
fn omega_report_is_reproducible() {
    let e = random_embedding(&builtin("K3,3,1").unwrap(), 9).unwrap();
    let a = serde_json::to_string(&omega_graph(&e).unwrap()).unwrap();
    let b = serde_json::to_string(&omega_graph(&e).unwrap()).unwrap();
    assert_eq!(a, b);
    let given = omega_graph_with(&e, Some(&p(3, -7, 11))).unwrap();
    assert_eq!(given.directions[0], p(3, -7, 11));
    assert_eq!(given.total, 1);
}

/// Six points on the moment curve: the only linked pair of triangles is
/// {1, 3, 5} and {2, 4, 6}.
fn moment_curve_k6() -> SpatialEmbedding {
    let pts: Vec<_> = (1..=6).map(|t| (t, [t, t * t, t * t * t])).collect();
    embed(builtin("K6").unwrap(), &pts)
}

#[test]
fn moment_curve_has_one_linked_pair() {
    let e = moment_curve_k6();
    let report = omega_graph(&e).unwrap();
    let odd: Vec<_> = report.pairs.iter().filter(|p| p.omega == 1).collect();
    assert_eq!(odd.len(), 1);
    let mut sets = [odd[0].j.clone(), odd[0].k.clone()];
    sets.iter_mut().for_each(|s| s.sort());
    sets.sort();
    assert_eq!(sets, [vec![1, 3, 5], vec![2, 4, 6]]);
    for pair in &report.pairs {
        let g = e.graph();
        let j = Circuit::from_vertex_cycle(g, &pair.j).unwrap();
        let k = Circuit::from_vertex_cycle(g, &pair.k).unwrap();
        let oracle = gauss_lk(&polygon(&e, &j), &polygon(&e, &k));
        assert!((oracle - pair.lk as f64).abs() < 1e-6);
    }
}

#[test]
fn k6_minus_edge_takes_both_values() {
    let e = moment_curve_k6();
    let pos = e.positions().clone();
    let minus = |a: i64, b: i64| {
        let g = e.graph();
        let g = g.delete_edge(g.edge_between(a, b).unwrap()).unwrap();
        SpatialEmbedding::straight(g, pos.clone()).unwrap()
    };
    // removing an edge of the linked pair kills it; removing 1-2 keeps it
    assert_eq!(omega_graph(&minus(1, 3)).unwrap().total, 0);
    assert_eq!(omega_graph(&minus(1, 2)).unwrap().total, 1);

    let g = builtin("K6").unwrap();
    let g = g.delete_edge(g.edge_between(1, 2).unwrap()).unwrap();
    let report = conway_gordon_experiment(&g, 200, 0).unwrap();
    assert!(report.count(0) > 0 && report.count(1) > 0, "{report:?}");
    assert_eq!(report.count(0) + report.count(1), 200);
}

#[test]
fn rerouting_around_an_edge_keeps_omega() {
    let e = moment_curve_k6();
    let edge = e.graph().edge_between(1, 6).unwrap();
    let f = e.graph().edge_between(2, 3).unwrap();
    let dir = p(1, 2, 1000);
    let before = project(&e, &dir).unwrap().crossings_between(&[edge], &[f]);

    // edge 2-3 runs through (5/2, 13/2, 35/2); pass over it there, drop
    // down beside it and come back underneath
    let path = vec![p(1, 1, 1), p(10, 5, 68), p(-5, 8, 68), p(-5, 8, -33), p(10, 5, -33), p(6, 36, 216)];
    let rerouted = e.reroute_edge(edge, path).unwrap();
    let after = project(&rerouted, &dir).unwrap().crossings_between(&[edge], &[f]);
    assert_eq!(after, before + 2);
    assert_eq!(omega_graph(&rerouted).unwrap().total, 1);
    assert_eq!(omega_graph(&e).unwrap().total, 1);
}

#[test]
fn reroute_rejects_collisions() {
    let e = moment_curve_k6();
    let edge = e.graph().edge_between(1, 6).unwrap();
    // passes through vertex 3
    let through = vec![p(1, 1, 1), p(3, 9, 27), p(6, 36, 216)];
    assert!(matches!(e.reroute_edge(edge, through), Err(SpatialError::Invalid(_))));
}

#[test]
fn edge_swap_small() {
    for name in ["K6", "K3,3,1"] {
        let e = random_embedding(&builtin(name).unwrap(), 5).unwrap();
        let report = edge_swap_check(&e, 10, 1).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.preserved, 10);
        assert_eq!(report.omega, 1);
        assert!(report.parity_checks > 0);
    }
    let k5 = random_embedding(&builtin("K5").unwrap(), 5).unwrap();
    assert!(matches!(edge_swap_check(&k5, 1, 0), Err(SpatialError::Unsupported(_))));
}

#[test]
fn experiment_is_deterministic() {
    let k6 = builtin("K6").unwrap();
    let a = conway_gordon_experiment(&k6, 30, 7).unwrap();
    assert_eq!(a, conway_gordon_experiment(&k6, 30, 7).unwrap());
    assert_eq!(a.count(1), 30);
    assert!(a.odd_pair_counts.keys().all(|n| n % 2 == 1));
}
