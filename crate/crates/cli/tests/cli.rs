use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const THETA: &str = r#"{"vertices":[0,1],"edges":[{"id":0,"ends":[0,1]},{"id":1,"ends":[0,1]},{"id":2,"ends":[0,1]}]}"#;
const DUMBBELL: &str = r#"{"vertices":[0,1],"edges":[{"id":0,"ends":[0,0]},{"id":1,"ends":[0,1]},{"id":2,"ends":[1,1]}]}"#;
const K4: &str = r#"{"vertices":[0,1,2,3],"edges":[{"id":0,"ends":[0,1]},{"id":1,"ends":[0,2]},{"id":2,"ends":[0,3]},{"id":3,"ends":[1,2]},{"id":4,"ends":[1,3]},{"id":5,"ends":[2,3]}]}"#;
const BUNDLE: &str = r#"{"rank":2,"edges":{
  "0":{"value":[[["2","0"],["1","0"]],[["1","0"],["1","0"]]],"orientation":[0,1]},
  "1":{"value":[[["1","0"],["1","0"]],[["0","0"],["1","0"]]],"orientation":[1,0]},
  "2":{"value":[[["1","0"],["0","1"]],[["0","0"],["1","0"]]],"orientation":[0,1]}}}"#;

fn llcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llcurve")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn put(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn graphs_writes_one_file_per_class_and_an_index() {
    let dir = tempfile::tempdir().unwrap();
    for (genus, count) in [("2", 2), ("3", 5)] {
        let out = dir.path().join(genus);
        let status = llcurve(&["graphs", "--genus", genus, "--out", out.to_str().unwrap()]);
        assert!(status.status.success());
        let index: Value = serde_json::from_str(&fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
        let listed = index["graphs"].as_array().unwrap();
        assert_eq!(listed.len(), count);
        for rec in listed {
            assert!(out.join(rec["file"].as_str().unwrap()).exists());
        }
    }
}

#[test]
fn graphs_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    llcurve(&["graphs", "--genus", "3", "--out", a.to_str().unwrap()]);
    llcurve(&["graphs", "--genus", "3", "--out", b.to_str().unwrap()]);
    for entry in fs::read_dir(&a).unwrap() {
        let name = entry.unwrap().file_name();
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
}

#[test]
fn genus_one_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = llcurve(&["graphs", "--genus", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_and_corrupt_files_are_io_errors_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = put(dir.path(), "bad.json", "{\"vertices\": [0,");
    for path in [bad.clone(), dir.path().join("absent.json").to_str().unwrap().to_owned()] {
        let out = llcurve(&["curve-info", "--graph", &path]);
        assert_eq!(out.status.code(), Some(4));
        assert!(String::from_utf8_lossy(&out.stderr).contains(&path));
    }
}

#[test]
fn non_trivalent_graph_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = put(dir.path(), "g.json", r#"{"vertices":[0,1],"edges":[{"id":0,"ends":[0,1]},{"id":1,"ends":[0,1]}]}"#);
    assert_eq!(llcurve(&["curve-info", "--graph", &g]).status.code(), Some(2));
}

#[test]
fn curve_info_reports_theta_and_dumbbell() {
    let dir = tempfile::tempdir().unwrap();
    let theta = json_of(&llcurve(&["curve-info", "--graph", &put(dir.path(), "t.json", THETA)]));
    assert_eq!(theta["dim_K"], 2);
    assert_eq!(theta["dim_2K"], 3);
    assert_eq!(theta["base_points"].as_array().unwrap().len(), 0);
    let dumbbell = json_of(&llcurve(&["curve-info", "--graph", &put(dir.path(), "d.json", DUMBBELL)]));
    assert_eq!(dumbbell["thickness"], 1);
    assert_eq!(dumbbell["base_points"], serde_json::json!([1]));
    let merged = json_of(&llcurve(&["curve-info", "--graph", &put(dir.path(), "t.json", THETA), "--merged", "0"]));
    assert_eq!(merged["dim_K"], 2);
}

#[test]
fn flip_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let theta = put(dir.path(), "t.json", THETA);
    let nest = json_of(&llcurve(&["flip", "--graph", &theta, "--edge", "1"]));
    assert_eq!(nest["nest"].as_array().unwrap().len(), 3);
    let dot = llcurve(&["flip", "--graph", &theta, "--edge", "1", "--format", "dot"]);
    assert_eq!(String::from_utf8_lossy(&dot.stdout).matches("subgraph cluster_").count(), 3);
    let red = json_of(&llcurve(&["reduce", "--graph", &put(dir.path(), "k4.json", K4), "--edge", "0"]));
    assert_eq!(red["graph"]["edges"].as_array().unwrap().len(), 3);
    let bridge = llcurve(&["reduce", "--graph", &put(dir.path(), "d.json", DUMBBELL), "--edge", "1"]);
    assert_eq!(bridge.status.code(), Some(2));
    assert_eq!(llcurve(&["reduce", "--graph", &theta, "--edge", "9"]).status.code(), Some(2));
}

#[test]
fn counts_and_incidence_export() {
    let report = json_of(&llcurve(&["counts", "--genus", "2"]));
    assert_eq!(report["classes"]["graphs"], 2);
    assert_eq!(report["flags_by_edge"], 6);
    let dot = String::from_utf8(llcurve(&["export", "--kind", "incidence", "--genus", "2"]).stdout).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 2);
}

#[test]
fn export_graph_dot_has_three_labelled_edges_on_theta() {
    let dir = tempfile::tempdir().unwrap();
    let out = llcurve(&["export", "--kind", "graph", "--graph", &put(dir.path(), "t.json", THETA)]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches(" -- ").count(), 3);
    for e in 0..3 {
        assert!(dot.contains(&format!("e{e}")));
    }
}

#[test]
fn bundle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let theta = put(dir.path(), "t.json", THETA);
    let b = put(dir.path(), "b.json", BUNDLE);
    let canon = json_of(&llcurve(&["bundle", "canon", "--graph", &theta, "--bundle", &b]));
    assert_eq!(canon["tuple"].as_array().unwrap().len(), 2);
    let equiv = json_of(&llcurve(&["bundle", "equiv", "--graph", &theta, "--bundle", &b, "--bundle2", &b]));
    assert_eq!(equiv["equivalent"], true);
    let packet = json_of(&llcurve(&["bundle", "packet", "--graph", &theta, "--bundle", &b]));
    assert_eq!(packet["difference"], 3);
    let scalar = put(dir.path(), "s.json", r#"{"rank":1,"edges":{"0":"2","1":"3/2","2":"-1"}}"#);
    let shifted = put(dir.path(), "s2.json", r#"{"rank":1,"edges":{"0":"4","1":"3","2":"-2"}}"#);
    let eq = json_of(&llcurve(&["bundle", "equiv", "--graph", &theta, "--bundle", &scalar, "--bundle2", &shifted]));
    assert_eq!(eq["equivalent"], true);
    assert_eq!(llcurve(&["bundle", "packet", "--graph", &theta, "--bundle", &scalar]).status.code(), Some(2));
}

#[test]
fn schottky_and_rep_commands() {
    let dir = tempfile::tempdir().unwrap();
    let theta = put(dir.path(), "t.json", THETA);
    let b = put(dir.path(), "b.json", BUNDLE);
    let section = llcurve(&["schottky", "section", "--graph", &theta, "--bundle", &b]);
    let rep = put(dir.path(), "rep.json", &String::from_utf8(section.stdout).unwrap());
    let verify = json_of(&llcurve(&["schottky", "verify", "--graph", &theta, "--bundle", &b]));
    assert_eq!(verify["unique"], true);
    assert_eq!(json_of(&llcurve(&["schottky", "roundtrip", "--graph", &theta, "--bundle", &b]))["round_trip"], true);
    assert_eq!(json_of(&llcurve(&["rep", "verify", "--rep", &rep]))["relation"], true);
    let eval = json_of(&llcurve(&["rep", "eval", "--rep", &rep, "--word", "l1 l2"]));
    assert_eq!(eval["trace"], serde_json::json!(["2", "0"]));

    let broken = r#"{"genus":1,"meridians":[[[["2","0"],["0","0"]],[["0","0"],["1/2","0"]]]],"longitudes":[[[["1","0"],["1","0"]],[["0","0"],["1","0"]]]]}"#;
    let out = llcurve(&["rep", "verify", "--rep", &put(dir.path(), "x.json", broken)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suite_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = llcurve(&["verify", "--genus-max", "2", "--seed", "11", "--out", p.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert!(report["properties"].as_array().unwrap().iter().all(|v| v["passed"] == true));
    assert!(report.get("timing").is_none());
}

#[test]
fn verify_rejects_genus_above_five() {
    assert_eq!(llcurve(&["verify", "--genus-max", "6"]).status.code(), Some(2));
}
