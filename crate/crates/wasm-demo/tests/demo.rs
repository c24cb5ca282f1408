use linkless_wasm::*;

#[test]
fn family_lists_seven_members() {
    let family = family_value();
    let members = family.as_array().unwrap();
    assert_eq!(members.len(), 7);
    for m in members {
        assert_eq!(m["edges"].as_array().unwrap().len(), 15);
        assert_eq!(m["member"], m["name"]);
    }
}

#[test]
fn explorer_moves_stay_in_the_family() {
    for m in family_value().as_array().unwrap() {
        let graph = m["edge_list"].as_str().unwrap();
        for t in m["triangles"].as_array().unwrap() {
            let t: Vec<i64> = t.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            let next = delta_y_value(graph, [t[0], t[1], t[2]]).unwrap();
            assert!(next["member"].is_string(), "{}", m["name"]);
        }
    }
    // Y-Delta on the new vertex undoes Delta-Y up to isomorphism
    let k6 = "K6";
    let g7 = delta_y_value(k6, [1, 2, 3]).unwrap();
    let back = y_delta_value(g7["edge_list"].as_str().unwrap(), 7).unwrap();
    assert_eq!(back["member"], "K6");
    assert!(delta_y_value("C4", [1, 2, 3]).is_err());
}

#[test]
fn projection_view() {
    let r = projection_value("K6", 0, [3, -7, 11]).unwrap();
    assert_eq!(r["omega"], 1);
    assert_eq!(r["summary"], "linked");
    assert_eq!(r["direction"], serde_json::json!(["3", "-7", "11"]));
    assert_eq!(r["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(r["pairs"].as_array().unwrap().len(), 10);
    for c in r["crossings"].as_array().unwrap() {
        assert!(c["sign"] == 1 || c["sign"] == -1);
        assert_ne!(c["over"], c["under"]);
    }
    let random = projection_value("K6", 0, [0, 0, 0]).unwrap();
    assert_eq!(random["omega"], 1);

    let k5 = projection_value("K5", 1, [0, 0, 0]).unwrap();
    assert_eq!(k5["summary"], "ω=0 (inconclusive)");
}
