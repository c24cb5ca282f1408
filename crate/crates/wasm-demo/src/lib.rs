//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; the page parses it.

use linkless::graph::{canonical_form, parse_graph, MultiGraph, VertexId, MAX_CANONICAL_VERTICES};
use linkless::minor::{classify, ClassifierOptions};
use linkless::moves::{delta_y, petersen_family, y_delta, TriangleSelector};
use linkless::spatial::{omega_graph_with, project, random_embedding, RationalPoint, SegmentRef};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn export(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

fn text<E: ToString>(e: E) -> String {
    e.to_string()
}

/// Classifies a builtin name or edge list with at most `budget` search nodes
/// per family member.
#[wasm_bindgen(js_name = classifyGraph)]
pub fn classify_graph(graph: &str, budget: u32) -> Result<String, JsError> {
    export(classify_value(graph, budget))
}

/// The seven members with their edge lists and triangles.
#[wasm_bindgen(js_name = petersenFamily)]
pub fn petersen_family_json() -> String {
    family_value().to_string()
}

/// Delta-Y on the triangle `a, b, c` of `graph`.
#[wasm_bindgen(js_name = deltaY)]
pub fn delta_y_move(graph: &str, a: i32, b: i32, c: i32) -> Result<String, JsError> {
    export(delta_y_value(graph, [a, b, c].map(VertexId::from)))
}

/// Y-Delta on the degree-3 vertex `v` of `graph`.
#[wasm_bindgen(js_name = yDelta)]
pub fn y_delta_move(graph: &str, v: i32) -> Result<String, JsError> {
    export(y_delta_value(graph, v.into()))
}

/// A seeded random embedding of `graph` seen along `(x, y, z)`, with
/// crossings and omega. A zero direction picks a regular one at random.
#[wasm_bindgen(js_name = projectEmbedding)]
pub fn project_embedding(graph: &str, seed: u32, x: i32, y: i32, z: i32) -> Result<String, JsError> {
    export(projection_value(graph, seed.into(), [x, y, z].map(i64::from)))
}

pub fn classify_value(graph: &str, budget: u32) -> Result<Value, String> {
    let g = parse_graph(graph).map_err(text)?;
    let options = ClassifierOptions { budget: budget.into(), prefilter: true };
    let v = classify(&g, &options).map_err(text)?;
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "verdict": v.verdict,
        "witness": v.witness,
        "stats": v.stats,
    }))
}

fn describe(g: &MultiGraph) -> Value {
    let canonical = (g.vertex_count() <= MAX_CANONICAL_VERTICES)
        .then(|| canonical_form(g).ok())
        .flatten();
    json!({
        "edge_list": g.to_edge_list(),
        "vertices": g.vertices().collect::<Vec<_>>(),
        "edges": g.edges().map(|e| [e.u, e.v]).collect::<Vec<_>>(),
        "triangles": g.triangles(),
        "degree3": g.vertices().filter(|&v| g.degree(v) == 3).collect::<Vec<_>>(),
        "canonical": canonical.as_ref().map(|c| c.to_hex()),
        "member": petersen_family().member_of(g).map(|m| m.name.clone()),
    })
}

pub fn family_value() -> Value {
    Value::Array(
        petersen_family()
            .members()
            .iter()
            .map(|m| {
                let mut d = describe(&m.graph);
                d["name"] = json!(m.name);
                d["derivation"] = json!(m.derivation);
                d
            })
            .collect(),
    )
}

pub fn delta_y_value(graph: &str, [a, b, c]: [VertexId; 3]) -> Result<Value, String> {
    let g = parse_graph(graph).map_err(text)?;
    let t = TriangleSelector::new(a, b, c).map_err(text)?;
    Ok(describe(&delta_y(&g, t).map_err(text)?))
}

pub fn y_delta_value(graph: &str, v: VertexId) -> Result<Value, String> {
    let g = parse_graph(graph).map_err(text)?;
    Ok(describe(&y_delta(&g, v).map_err(text)?))
}

/// Orthonormal-ish screen axes for `d`, matching the library's frame:
/// `u = d x e_k` for the axis `k` where `|d_k|` is least, then `w = d x u`.
fn screen_frame(d: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let unit = |a: [f64; 3]| {
        let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        a.map(|x| x / n)
    };
    let k = (0..3).min_by(|&i, &j| d[i].abs().total_cmp(&d[j].abs())).unwrap();
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let u = cross(d, e);
    (unit(u), unit(cross(d, u)))
}

pub fn projection_value(graph: &str, seed: u64, direction: [i64; 3]) -> Result<Value, String> {
    let g = parse_graph(graph).map_err(text)?;
    let e = random_embedding(&g, seed).map_err(text)?;
    let d = RationalPoint::from_ints(direction[0], direction[1], direction[2]);
    let report = omega_graph_with(&e, (!d.is_zero()).then_some(&d)).map_err(text)?;
    let shown = report.directions[0].clone();
    let diagram = project(&e, &shown).map_err(text)?;

    let (u, w) = screen_frame(shown.to_f64());
    let flat = |p: &RationalPoint| {
        let p = p.to_f64();
        let dot = |a: [f64; 3]| a[0] * p[0] + a[1] * p[1] + a[2] * p[2];
        [dot(u), dot(w)]
    };
    let point_on = |s: &SegmentRef| {
        let path = e.path(s.edge).unwrap();
        path[s.segment].lerp(&path[s.segment + 1], &s.param)
    };
    let segment = |s: &SegmentRef| {
        let path = e.path(s.edge).unwrap();
        [flat(&path[s.segment]), flat(&path[s.segment + 1])]
    };
    Ok(json!({
        "direction": shown,
        "vertices": e.positions().iter().map(|(v, p)| json!({ "id": v, "at": flat(p) })).collect::<Vec<_>>(),
        "edges": g.edges().map(|x| json!({
            "id": x.id,
            "ends": [x.u, x.v],
            "path": e.path(x.id).unwrap().iter().map(flat).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "crossings": diagram.crossings.iter().map(|c| json!({
            "at": flat(&point_on(&c.over)),
            "over": c.over.edge,
            "under": c.under.edge,
            "over_segment": segment(&c.over),
            "sign": c.sign,
        })).collect::<Vec<_>>(),
        "pairs": report.pairs,
        "omega": report.total,
        "summary": if report.total == 1 { "linked" } else { "ω=0 (inconclusive)" },
    }))
}
