use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SEVEN: &str =
    r#"{"sets": [[], ["2"], ["3"], ["1","2"], ["1","3"], ["2","3"], ["1","2","3"]]}"#;
const DIM_TWO: &str =
    r#"{"sets": [["1","2"],["2","3"],["3","4"],["1","2","3"],["2","3","4"],["1","2","3","4"]]}"#;
const FIVE_POINT: &str = r#"{"sets": [
    ["1","2"],["2","3"],["3","4"],["4","5"],["1","5"],
    ["1","2","3"],["2","3","4"],["3","4","5"],["1","4","5"],["1","2","5"],
    ["1","2","3","4"],["2","3","4","5"],["1","3","4","5"],["1","2","4","5"],["1","2","3","5"],
    ["1","2","3","4","5"]]}"#;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn frankl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frankl"))
        .args(args)
        .env_remove("FRANKL_MAX_UNIVERSE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn analyze_five_point_family() {
    let d = Files::new();
    let p = d.write("k.json", FIVE_POINT);
    let o = frankl(&["analyze", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["members"], 16);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 5);
    assert!(elements
        .iter()
        .all(|e| e["optimal"] == true && e["abundant"] == true));
}

#[test]
fn analyze_table_output() {
    let d = Files::new();
    let p = d.write("e.json", SEVEN);
    let o = frankl(&["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dimension     3"), "{out}");
    assert!(out
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "3", "4", "no", "yes", "no"]));
}

#[test]
fn optimal_not_abundant_witness_exits_3() {
    let d = Files::new();
    let p = d.write("e.json", SEVEN);
    let o = frankl(&["analyze", p.to_str().unwrap(), "--witness", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("optimal but not abundant"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn dim_two_witness() {
    let d = Files::new();
    let p = d.write("d.json", DIM_TWO);
    let o = frankl(&["witness", p.to_str().unwrap(), "2", "--method", "dim2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["method"], "dim2");
    assert_eq!(
        v["pairs"],
        serde_json::json!([[["3", "4"], ["2", "3", "4"]]])
    );
    // The default order tries covers first; the single pair is the same.
    let o = frankl(&["witness", p.to_str().unwrap(), "2"]);
    let v = json(&o);
    assert_eq!(v["method"], "cover");
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
}

#[test]
fn dim2_on_non_separating_names_the_hypothesis() {
    let d = Files::new();
    let p = d.write("n.json", r#"{"sets": [["1","2"], ["1","2","3"]]}"#);
    let o = frankl(&["witness", p.to_str().unwrap(), "1", "--method", "dim2"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(
        err.contains("dimension-two") && err.contains("quotient"),
        "{err}"
    );
}

#[test]
fn parse_errors_exit_2() {
    let d = Files::new();
    for (name, text) in [
        ("bad.json", "{not json"),
        ("empty.json", r#"{"sets": []}"#),
        ("trivial.json", r#"{"sets": [[]]}"#),
        ("extra.json", r#"{"sets": [["1"]], "colour": 3}"#),
    ] {
        let p = d.write(name, text);
        let o = frankl(&["analyze", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}: {}", stderr(&o));
    }
    let p = d.write("trivial.json", r#"{"sets": [[]]}"#);
    let o = frankl(&["analyze", "--allow-trivial", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = frankl(&["analyze", "/nonexistent/family.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn universe_cap_from_environment() {
    let d = Files::new();
    let p = d.write("k.json", FIVE_POINT);
    let o = Command::new(env!("CARGO_BIN_EXE_frankl"))
        .args(["analyze", p.to_str().unwrap()])
        .env("FRANKL_MAX_UNIVERSE", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("FRANKL_MAX_UNIVERSE"));
}

#[test]
fn tent_example() {
    let d = Files::new();
    let f = d.write("f.json", r#"{"sets": [[], ["1","3"], ["2","4"]]}"#);
    let t = d.write("t.json", r#"{"sets": [["1"], ["2"], ["1","2"]]}"#);
    let o = frankl(&["tent", f.to_str().unwrap(), t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["element"], "1");
    assert_eq!(v["method"], "tent");
    assert_eq!(v["M"], serde_json::json!(["1"]));
    assert_eq!(v["N"], serde_json::json!(["2"]));
    let mut pairs: Vec<String> = v["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    pairs.sort();
    assert_eq!(
        pairs,
        vec![
            r#"[["2","4"],["1","3"]]"#,
            r#"[["2"],["1"]]"#,
            r#"[[],["1","2"]]"#,
        ]
    );
}

#[test]
fn tent_precondition_exits_3() {
    let d = Files::new();
    let f = d.write("f.json", r#"{"sets": [["3"]]}"#);
    let t = d.write("t.json", r#"{"sets": [["1"], ["2"], ["1","2"]]}"#);
    let o = frankl(&["tent", f.to_str().unwrap(), t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn topology_chain() {
    let d = Files::new();
    let p = d.write(
        "t.json",
        r#"{"points": ["1","2","3"], "sets": [[], ["1"], ["1","2"], ["1","2","3"]]}"#,
    );
    let o = frankl(&["topology", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["point"], "1");
    assert_eq!(v["containing"], 3);

    let bad = d.write("b.json", r#"{"points": ["1","2"], "sets": [[], ["1"]]}"#);
    assert_eq!(
        frankl(&["topology", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn quotient_report() {
    let d = Files::new();
    let p = d.write("q.json", r#"{"sets": [["1","2"], ["1","2","3"]]}"#);
    let o = frankl(&["quotient", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["classes"][0]["name"], "[1]");
    assert_eq!(v["quotient"], serde_json::json!([["1"], ["1", "3"]]));
    assert_eq!(v["checks"]["order_isomorphism"], true);
}

#[test]
fn enumerate_claims_n3() {
    let o = frankl(&["enumerate", "--claims", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 9);
    assert!(lines.iter().all(|v| v["passed"] == true));
}

#[test]
fn enumerate_counts_and_limits() {
    let o = frankl(&["enumerate", "-n", "2", "--union-closed", "--nontrivial"]);
    let v = json(&o);
    assert_eq!(v["matched"], 12);
    let par = frankl(&[
        "enumerate",
        "-n",
        "4",
        "--union-closed",
        "--nontrivial",
        "--jobs",
        "8",
    ]);
    assert_eq!(json(&par)["matched"], 4958);
    assert_eq!(frankl(&["enumerate", "-n", "6"]).status.code(), Some(2));
    assert_eq!(frankl(&["enumerate", "-n", "5"]).status.code(), Some(2));
    let s = frankl(&[
        "enumerate",
        "-n",
        "5",
        "--sample",
        "500",
        "--seed",
        "3",
        "--claims",
    ]);
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
}

#[test]
fn output_is_deterministic() {
    let d = Files::new();
    let p = d.write("k.json", FIVE_POINT);
    let a = frankl(&["analyze", "--json", "--witness", "3", p.to_str().unwrap()]);
    let b = frankl(&["analyze", "--json", "--witness", "3", p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let s1 = frankl(&[
        "enumerate",
        "-n",
        "5",
        "--sample",
        "200",
        "--seed",
        "9",
        "--union-closed",
    ]);
    let s2 = frankl(&[
        "enumerate",
        "-n",
        "5",
        "--sample",
        "200",
        "--seed",
        "9",
        "--union-closed",
    ]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn dot_export() {
    let d = Files::new();
    let p = d.write("d.json", DIM_TWO);
    let o = frankl(&["analyze", "--dot", p.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph"), "{out}");
    assert_eq!(out.matches("->").count(), 6);
}
