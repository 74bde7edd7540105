use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use ltop_core::completion::boundary::{boundary_profile, default_eps};
use ltop_core::completion::floyd::{floyd_lengths, Decay};
use ltop_core::generators::{catalog, HyperbolicStrip};
use ltop_core::WeightedGraph;

const SQUARE_WITH_CHORDS: &str = r#"{
  "vertices": [{"id": "a"}, {"id": "b"}, {"id": "c"}, {"id": "d"}],
  "edges": [
    {"id": "ab", "u": "a", "v": "b", "len": 1},
    {"id": "bc", "u": "b", "v": "c", "len": 1},
    {"id": "cd", "u": "c", "v": "d", "len": 1},
    {"id": "da", "u": "d", "v": "a", "len": 1},
    {"id": "ac", "u": "a", "v": "c", "len": 0.5},
    {"id": "ac2", "u": "a", "v": "c", "len": 3}
  ]
}"#;

fn ltop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltop")).args(args).env_remove("LTOP_OUT_DIR").output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = ltop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn error_of(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let v: Value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr is not json ({e}): {text}"));
    v["error"].clone()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_list_covers_the_catalog() {
    let r = ok_json(&["gen-list"]);
    let names: Vec<&str> = r["results"]["generators"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    let expected: Vec<&str> = catalog().iter().map(|c| c.name).collect();
    assert_eq!(names, expected);
    for g in r["results"]["generators"].as_array().unwrap() {
        assert!(!g["doc"].as_str().unwrap().is_empty());
    }
    let monster = r["results"]["generators"].as_array().unwrap().iter().find(|g| g["name"] == "monster-ltop").unwrap();
    assert_eq!(monster["available"], false);
}

#[test]
fn boundary_matches_golden_csv_and_library_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("profile.json");
    let o = ltop(&["boundary", "--gen", "hyperbolic-strip", "--floyd", "f=pow2", "--levels", "4,6", "--depth", "10", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    let golden = include_str!("golden/boundary_pow2_levels_4_6_depth_10.csv");
    assert_eq!(csv, golden);

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let g = floyd_lengths(Box::new(HyperbolicStrip), None, Decay::Pow2, 10).unwrap();
    let lib = boundary_profile(&g, &[4, 6], 10, &default_eps()).unwrap();
    assert_eq!(report["results"]["profile"], serde_json::to_value(&lib).unwrap());
    assert_eq!(report["results"]["csv"], lib.csv());
    // counts grow with resolution until they hit the frontier size
    assert_eq!(lib.counts(6)[..6], [3, 5, 9, 17, 33, 65]);
}

#[test]
fn malformed_graph_json_exits_with_parse_code_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"vertices\": [");
    let out = dir.path().join("report.json");
    let o = ltop(&["cyclebasis", "--graph", &bad, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_of(&o)["kind"], "parse");
    assert!(o.stdout.is_empty());
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1, "no stray temporary files");

    let dangling = write(dir.path(), "dangling.json", r#"{"vertices":[{"id":"a"}],"edges":[{"id":"e","u":"a","v":"z","len":1}]}"#);
    assert_eq!(ltop(&["euler", "--graph", &dangling]).status.code(), Some(3));
}

#[test]
fn reports_are_deterministic_and_seed_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", SQUARE_WITH_CHORDS);
    let args = ["geodetic", "--graph", &g, "--element", "ab,bc,cd,da"];
    let a = ltop(&args);
    let b = ltop(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let first: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(first["provenance"]["seed"], 0);
    let seeded = ok_json(&["geodetic", "--graph", &g, "--element", "ab,bc,cd,da", "--seed", "7"]);
    assert_eq!(seeded["provenance"]["seed"], 7);
    assert_ne!(seeded["provenance"]["config_hash"], first["provenance"]["config_hash"]);
    assert_eq!(seeded["results"], first["results"]);
    assert_eq!(first["provenance"]["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn error_kinds_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", SQUARE_WITH_CHORDS);
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["cyclebasis", "--graph", "/nonexistent/g.json"], 1, "io"),
        (vec!["frobnicate"], 2, "usage"),
        (vec!["quotient", "--gen", "fan", "--level", "2"], 2, "usage"),
        (vec!["quotient", "--gen", "no-such-thing", "--level", "2", "--tau", "0.1"], 4, "generator"),
        (vec!["quotient", "--gen", "monster-ltop", "--level", "2", "--tau", "0.1"], 4, "generator"),
        (vec!["boundary", "--gen", "hyperbolic-strip", "--levels", "4,8", "--depth", "8"], 5, "inconsistent_flags"),
        (vec!["dist", "--graph", &g, "--gen", "fan", "--from", "a", "--to", "b"], 5, "inconsistent_flags"),
        (vec!["dist", "--graph", &g, "--from", "a", "--to", "edge:ab@2"], 5, "inconsistent_flags"),
        (vec!["geodetic", "--graph", &g, "--element", "ab"], 5, "inconsistent_flags"),
        (vec!["linegraph", "--gen", "grid", "--level", "0"], 6, "computation"),
    ];
    for (args, code, kind) in cases {
        let o = ltop(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let e = error_of(&o);
        assert_eq!(e["kind"], kind, "{args:?}");
        assert_eq!(e["code"], code);
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn output_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ltop"))
        .args(["quotient", "--gen", "fan?leg=0.5&ray=0.5", "--level", "3", "--tau", "0.2"])
        .env("LTOP_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("quotient.json")).unwrap()).unwrap();
    assert_eq!(r["command"], "quotient");
    assert_eq!(r["inputs"]["tau"], 0.2);
}

#[test]
fn distances_to_points_inside_edges() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", SQUARE_WITH_CHORDS);
    let r = ok_json(&["dist", "--graph", &g, "--from", "a", "--to", "edge:bc@0.25"]);
    // a-b-(0.25 into bc) beats a-c-(0.75 back along bc)
    assert_eq!(r["results"]["value"], 1.25);
    let w: Vec<&str> = r["results"]["witness"].as_array().unwrap().iter().map(|s| s["edge"].as_str().unwrap()).collect();
    assert_eq!(w, ["ab", "bc"]);

    let lim = ok_json(&["dist", "--gen", "double-ray?ratio=0.5", "--levels", "1,3", "--from", "d-1", "--to", "d1"]);
    let vals: Vec<f64> = lim["results"]["levels"].as_array().unwrap().iter().map(|l| l["value"].as_f64().unwrap()).collect();
    assert_eq!(vals, [2.0, 2.0]);
}

#[test]
fn exported_graphs_round_trip() {
    let r = ok_json(&["floyd", "--gen", "hyperbolic-strip", "--f", "pow4", "--level", "3"]);
    let exported = &r["results"]["graph"];
    let g = WeightedGraph::from_json(&exported.to_string()).unwrap();
    assert_eq!(&g.to_json_value(), exported);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "floyd.json", &exported.to_string());
    let basis = ok_json(&["cyclebasis", "--graph", &path]);
    assert_eq!(basis["results"]["dimension"], basis["results"]["basis"].as_array().unwrap().len());
}

#[test]
fn hamilton_from_a_supplied_euler_tour() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", SQUARE_WITH_CHORDS);
    let e = ok_json(&["euler", "--graph", &g, "--log"]);
    assert!(e["results"]["log"].is_array());
    let tour = write(dir.path(), "tour.json", &e["results"]["tour"].to_string());
    let h = ok_json(&["hamilton-from-euler", "--graph", &g, "--tour", &tour]);
    assert_eq!(h["results"]["verdict"]["valid"], true);
    assert_eq!(h["results"]["length"], h["results"]["total_length"]);
    assert_eq!(h["results"]["euler"], e["results"]["tour"]);
    assert_eq!(h["results"]["hamilton"]["vertices"].as_array().unwrap().len(), 6);

    let broken = write(dir.path(), "broken.json", r#"{"kind":"euler","edges":["ab","bc"],"start":"a"}"#);
    assert_eq!(ltop(&["hamilton-from-euler", "--graph", &g, "--tour", &broken]).status.code(), Some(6));
}
