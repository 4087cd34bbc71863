use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use homlab_core::carrier::StructureFile;
use homlab_core::from_relations;
use homlab_core::search::isomorphic;
use serde_json::Value;
use tempfile::TempDir;

fn homlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn search_finds_the_two_element_countermodel() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", r#"{"max_n":3,"require":["I2"],"violate":["I3"]}"#);
    let o = homlab(&["--json", "--workers", "1", "search", &spec]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let file: StructureFile = serde_json::from_value(v["model"].clone()).unwrap();
    let m = file.to_magma().unwrap();
    assert!(isomorphic(&m, &from_relations("alpha: e2->e1").unwrap()));
}

#[test]
fn search_exhausts_a_true_implication() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", r#"{"max_n":3,"require":["I1"],"violate":["I3"]}"#);
    let o = homlab(&["search", &spec]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no model"));
}

#[test]
fn search_output_is_identical_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", r#"{"max_n":3,"require":["II2","II3"],"violate":["II1"]}"#);
    let runs: Vec<Vec<u8>> =
        ["1", "2", "8"].iter().map(|w| homlab(&["--json", "--workers", w, "search", &spec]).stdout).collect();
    assert!(runs.iter().all(|r| *r == runs[0]));
}

#[test]
fn reproduce_passes_and_is_deterministic() {
    let runs: Vec<Output> = ["1", "4"].iter().map(|w| homlab(&["--json", "--workers", w, "reproduce"])).collect();
    for o in &runs {
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let text = homlab(&["reproduce"]);
    assert!(stdout(&text).contains("16/16 fixtures pass"));
}

#[test]
fn check_reports_every_identity_on_an_associative_structure() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "unit.txt", "alpha: e1->e1\n");
    let o = homlab(&["--json", "check", &file]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v.to_string().contains("true"));
    assert!(!v.to_string().contains("false"));
}

#[test]
fn check_with_a_custom_identity_reports_a_violation() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "m.txt", "alpha: e2->e1\n");
    let o = homlab(&["check", &file, "--identity", "a(x)*y = x*a(y)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn profile_lists_satisfied_types() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "m.txt", "alpha: e2->e1\n");
    let o = homlab(&["profile", &file]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let satisfied = text.lines().next().unwrap();
    assert!(satisfied.split_whitespace().any(|w| w == "assoc:I2"));
    assert!(!satisfied.split_whitespace().any(|w| w == "assoc:I3"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(homlab(&["search", missing.to_str().unwrap()]).status.code(), Some(2));
    let bad = write(&dir, "bad.json", r#"{"max_n":3,"require":["I9"]}"#);
    assert_eq!(homlab(&["search", &bad]).status.code(), Some(2));
    let m = write(&dir, "m.txt", "alpha: e2->e1\n");
    assert_eq!(homlab(&["check", &m, "--identity", "x*(y"]).status.code(), Some(2));
    assert_eq!(homlab(&["no-such-command"]).status.code(), Some(2));
}

fn sl2_file(dir: &TempDir, alpha: [[i64; 3]; 3]) -> String {
    let body = serde_json::json!({
        "p": 7,
        "dim": 3,
        "kind": "skew",
        "c": [
            [[0, 0, 0], [0, 0, 1], [-2, 0, 0]],
            [[0, 0, -1], [0, 0, 0], [0, 2, 0]],
            [[2, 0, 0], [0, -2, 0], [0, 0, 0]],
        ],
        "alpha": alpha,
    });
    write(dir, "sl2.json", &body.to_string())
}

#[test]
fn lie_verify_flags_the_refuted_morphism_claim() {
    let dir = TempDir::new().unwrap();
    let file = sl2_file(&dir, [[3, 0, 0], [0, 5, 0], [0, 0, 1]]);
    let o = homlab(&["lie-verify", &file]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("alpha a morphism): REFUTED"));
}

#[test]
fn lie_verify_accepts_the_identity_twist_claims() {
    let dir = TempDir::new().unwrap();
    let file = sl2_file(&dir, [[0, 0, 0], [0, 0, 0], [0, 0, 0]]);
    let o = homlab(&["--json", "lie-verify", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["is_lie"], Value::Bool(true));
}

#[test]
fn jacobiator_evaluates_at_basis_vectors() {
    let dir = TempDir::new().unwrap();
    let file = sl2_file(&dir, [[0, 0, 0], [0, 0, 0], [0, 0, 0]]);
    let o = homlab(&["--json", "jacobiator", &file, "--type", "lie:I1", "--at", "e1,e2,e3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["value"], serde_json::json!([0, 0, 0]));
    let o = homlab(&["jacobiator", &file, "--type", "lie:I1", "--at", "e1,e2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_writes_every_fixture() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = homlab(&["export", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for id in ["1", "2", "11"] {
        assert!(Path::new(&out.join(format!("fixture-{id}.json"))).exists());
    }
    let k3 = fs::read_to_string(out.join("K3-example.json")).unwrap();
    assert!(k3.contains("\"p\": 7"));
}
