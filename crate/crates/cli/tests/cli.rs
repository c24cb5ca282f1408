use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn linkless(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkless"))
        .args(args)
        .env_remove("LINKLESS_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_verdicts() {
    let out = linkless(&["classify", "K6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["verdict"], "linked");
    assert_eq!(r["witness"]["member"], "K6");

    let r = json(&linkless(&["classify", "K5"]));
    assert_eq!(r["verdict"], "unlinked");
    assert_eq!(r["witness"], Value::Null);
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_linkless"))
        .args(["classify", "grid4x4"])
        .env("LINKLESS_BUDGET", "3")
        .output()
        .unwrap();
    let r = json(&out);
    assert_eq!(r["budget"], 3);
    assert_eq!(r["verdict"], "unknown");
    // an explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_linkless"))
        .args(["classify", "grid4x4", "--budget", "100000"])
        .env("LINKLESS_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["verdict"], "unlinked");
}

#[test]
fn minor_outcomes() {
    let r = json(&linkless(&["minor", "K3,3", "K4"]));
    assert_eq!(r["result"], "yes");
    assert_eq!(r["model_valid"], true);
    assert_eq!(json(&linkless(&["minor", "C6", "K4"]))["result"], "no");
    assert_eq!(json(&linkless(&["minor", "grid4x4", "K5", "--budget", "10"]))["result"], "unknown");
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.txt");
    std::fs::write(&two, "4 2\n1 2\n3 4\n").unwrap();
    assert_eq!(linkless(&["minor", "K6", path(&two)]).status.code(), Some(2));
}

#[test]
fn petersen_list_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = linkless(&["petersen", "list", "--out-dir", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["count"], 7);
    let members = r["members"].as_array().unwrap();
    assert!(members.iter().all(|m| m["edges"] == 15));
    let names: Vec<&str> = members.iter().map(|m| m["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"K6") && names.contains(&"K3,3,1") && names.contains(&"Petersen"));
    for m in members {
        let file = dir.path().join(format!("{}.txt", m["name"].as_str().unwrap()));
        let text = std::fs::read_to_string(file).unwrap();
        assert_eq!(text, m["edge_list"].as_str().unwrap());
        // the files are valid graph inputs
        let back = json(&linkless(&["classify", path(&dir.path().join(format!("{}.txt", m["name"].as_str().unwrap())))]));
        assert_eq!(back["verdict"], "linked");
    }
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest, r);
}

#[test]
fn deltay_moves() {
    let r = json(&linkless(&["deltay", "K6", "--triangle", "1,2,3"]));
    assert_eq!(r["vertices"], 7);
    assert_eq!(r["edges"], 15);
    assert_eq!(r["new_vertex"], 7);
    assert!(r["family_member"].is_string());
    let r = json(&linkless(&["deltay", "K3,3", "--vertex", "1"]));
    assert_eq!(r["vertices"], 5);
    assert_eq!(linkless(&["deltay", "K6", "--triangle", "1,2"]).status.code(), Some(2));
    assert_eq!(linkless(&["deltay", "C4", "--triangle", "1,2,3"]).status.code(), Some(2));
    assert_eq!(linkless(&["deltay", "K6"]).status.code(), Some(2));
}

#[test]
fn embed_then_omega() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k6.json");
    assert_eq!(linkless(&["embed", "K6", "--seed", "9", "-o", path(&file)]).status.code(), Some(0));
    let r = json(&linkless(&["omega", path(&file)]));
    assert_eq!(r["omega"], 1);
    assert_eq!(r["embedding"], "linked");
    assert_eq!(r["pairs"].as_array().unwrap().len(), 10);
    let r = json(&linkless(&["omega", path(&file), "--direction", "-5,2/3,17"]));
    assert_eq!(r["omega"], 1);
    assert_eq!(r["directions"][0], serde_json::json!(["-5", "2/3", "17"]));

    // omega of K5 vanishes on every embedding, and the CLI says so carefully
    let k5 = dir.path().join("k5.json");
    linkless(&["embed", "K5", "-o", path(&k5)]);
    let r = json(&linkless(&["omega", path(&k5)]));
    assert_eq!(r["omega"], 0);
    assert_eq!(r["embedding"], "ω=0 (inconclusive)");
}

#[test]
fn corrupted_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"graph\": \"K6\", \"vertices\": {\"1\": [\"1/0\"").unwrap();
    let out = linkless(&["omega", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));
    assert_eq!(linkless(&["acceptance", "--trials", "1", "--embedding", path(&bad)]).status.code(), Some(2));

    std::fs::write(&bad, "{\"graph\": \"K3\", \"vertices\": {\"1\": [\"0\",\"0\",\"0\"], \"2\": [\"1\",\"0\",\"0\"], \"3\": [\"2\",\"0\",\"0\"]}}").unwrap();
    assert_eq!(linkless(&["omega", path(&bad)]).status.code(), Some(2));

    let list = dir.path().join("g.txt");
    std::fs::write(&list, "3 2\n1 2\n").unwrap();
    assert_eq!(linkless(&["classify", path(&list)]).status.code(), Some(2));
    assert_eq!(linkless(&["classify", "K0,3"]).status.code(), Some(2));
    assert_eq!(linkless(&["embed", "K6", "-o", path(&dir.path().join("missing/dir.json"))]).status.code(), Some(2));
}

#[test]
fn reroute_check_scope() {
    let r = json(&linkless(&["reroute-check", "K3,3,1", "--trials", "5", "--seed", "2"]));
    assert_eq!(r["pass"], true);
    assert_eq!(r["report"]["preserved"], 5);
    assert_eq!(linkless(&["reroute-check", "K5", "--trials", "5"]).status.code(), Some(2));
}

#[test]
fn experiment_is_deterministic() {
    let args = ["experiment", "k331", "--trials", "20", "--seed", "3"];
    let (a, b) = (linkless(&args), linkless(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["report"]["omega_counts"]["1"], 20);
    assert_eq!(r["expected_omega"], 1);

    // other graphs are tabulated without an expectation
    let r = json(&linkless(&["experiment", "K5", "--trials", "5"]));
    assert_eq!(r["report"]["omega_counts"]["0"], 5);
    assert_eq!(r["expected_omega"], Value::Null);
}

#[test]
fn reduced_acceptance_run() {
    let out = linkless(&["acceptance", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 8);
    assert_eq!(r["pass"], true);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS ")).count(), 8);
}

const SUBCOMMANDS: [&[&str]; 10] = [
    &["classify"],
    &["minor"],
    &["petersen"],
    &["petersen", "list"],
    &["deltay"],
    &["embed"],
    &["omega"],
    &["reroute-check"],
    &["experiment"],
    &["acceptance"],
];

#[test]
fn help_and_unknown_flags() {
    for sub in SUBCOMMANDS {
        let mut args = sub.to_vec();
        args.push("--help");
        let out = linkless(&args);
        assert_eq!(out.status.code(), Some(0), "{sub:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"), "{sub:?}");

        let mut args = sub.to_vec();
        args.push("--frobnicate");
        let out = linkless(&args);
        assert_eq!(out.status.code(), Some(2), "{sub:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("--frobnicate"), "{sub:?}");
    }
    assert_eq!(linkless(&[]).status.code(), Some(2));
}
