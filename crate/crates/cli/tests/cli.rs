use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(path)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-lab")).args(args).output().expect("binary runs")
}

fn run_fixture(cmd: &str, path: &str, extra: &[&str]) -> Output {
    let p = fixture(path);
    let mut args = vec![cmd, p.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn element_strings(set: &Value) -> Vec<String> {
    set["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let side = |k: &str| e[k].as_object().unwrap().iter().map(|(i, p)| format!("{i}^{p}")).collect::<Vec<_>>().join("*");
            format!("{} - {}", side("plus"), side("minus"))
        })
        .collect()
}

#[test]
fn analyze_k4() {
    let o = run_fixture("analyze", "graphs/k4.txt", &["--format", "json", "--oracle"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    let c = &v["counts"];
    for k in ["graver", "markov", "ugb", "circuits"] {
        assert_eq!(c[k], 3, "{k}");
    }
    assert_eq!(c["generalized_robust"], true);
    assert_eq!(c["robust"], false);
    assert_eq!(v["oracle"]["mismatches"].as_array().unwrap().len(), 0);
    assert!(v.get("timings").is_none());
}

#[test]
fn analyze_c4_text() {
    let o = run_fixture("analyze", "graphs/c4.txt", &[]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("circuits=1 graver=1 ugb=1 markov=1 indispensable=1"));
    assert!(out.contains("generalized_robust=true robust=true"));
    assert!(out.contains("e1e2 - e3e4"));
}

#[test]
fn analyze_domino_reports_r3_witness() {
    let o = run_fixture("analyze", "graphs/domino.txt", &["--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"]["generalized_robust"], false);
    let c = &v["verdict"]["criteria"]["circuit_rules"];
    assert_eq!(c["holds"], false);
    assert_eq!(c["witness"]["rules"], serde_json::json!(["R3"]));
}

#[test]
fn json_output_is_byte_identical() {
    let a = run_fixture("analyze", "graphs/square-triangles-adjacent.txt", &["--format", "json", "--oracle"]);
    let b = run_fixture("analyze", "graphs/square-triangles-adjacent.txt", &["--format", "json", "--oracle"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let m1 = run_fixture("matrix", "matrices/n5.json", &["--box", "1", "--samples", "10", "--seed", "4", "--format", "json"]);
    let m2 = run_fixture("matrix", "matrices/n5.json", &["--box", "1", "--samples", "10", "--seed", "4", "--format", "json"]);
    assert_eq!(m1.stdout, m2.stdout);
}

#[test]
fn matrix_n5_box_one() {
    let o = run_fixture("matrix", "matrices/n5.json", &["--box", "1", "--samples", "50", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["minimal_markov"]["count"], 3);
    assert_eq!(v["universal_markov"]["count"], 6);
    assert_eq!(v["graver"]["count"], 6);
    assert_eq!(v["indispensable"]["count"], 0);
    assert_eq!(v["generated_by_indispensables"], false);
    assert_eq!(v["complete_within_box_only"], true);
    assert_eq!(v["groebner"]["union_in_universal_markov"], true);
}

#[test]
fn matrix_incidence_agrees_with_graph() {
    let m = json(&run_fixture("matrix", "matrices/k4-incidence.json", &["--box", "2", "--format", "json"]));
    let g = json(&run_fixture("analyze", "graphs/k4.txt", &["--format", "json"]));
    assert_eq!(element_strings(&m["graver"]), element_strings(&g["sets"]["graver"]));
    assert_eq!(element_strings(&m["universal_markov"]), element_strings(&g["sets"]["markov"]));
    assert_eq!(element_strings(&m["indispensable"]), element_strings(&g["sets"]["indispensable"]));
}

#[test]
fn set_commands() {
    let o = run_fixture("circuits", "graphs/k4.txt", &["--format", "json"]);
    assert_eq!(json(&o)["count"], 3);
    let o = run_fixture("ugb", "graphs/domino.txt", &[]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("ugb (3):"));
    let o = run_fixture("markov", "graphs/domino.txt", &["--format", "json"]);
    assert_eq!(json(&o)["count"], 2);
    let o = run_fixture("graver", "matrices/n5.json", &["--matrix", "--box", "1", "--format", "json"]);
    assert_eq!(json(&o)["count"], 6);
    let o = run_fixture("check", "graphs/k4.txt", &[]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("generalized_robust=true robust=false"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run_fixture("matrix", "matrices/negative.csv", &[])), 5);
    assert_eq!(code(&run_fixture("matrix", "matrices/malformed.csv", &[])), 2);
    assert_eq!(code(&run(&["analyze", "/definitely/not/here.txt"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\n2\n").unwrap();
    assert_eq!(code(&run(&["analyze", bad.to_str().unwrap()])), 2);

    let big = dir.path().join("k7.txt");
    let mut text = String::new();
    for u in 1..=7 {
        for v in u + 1..=7 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    std::fs::write(&big, text).unwrap();
    assert_eq!(code(&run(&["analyze", big.to_str().unwrap()])), 3);
}

#[test]
fn suite_over_fixtures_and_random() {
    let curated = fixture("graphs");
    assert_eq!(code(&run(&["suite", curated.to_str().unwrap()])), 0);
    let o = run(&["suite", "--random", "200", "--max-vertices", "8", "--seed", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["passed"], 200);
    assert_eq!(v["failed"], 0);
}

#[test]
fn corrupted_suite_exits_four_with_counterexample() {
    let o = run(&["suite", fixture("corrupted").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 4);
    let v = json(&o);
    let failed: Vec<&Value> = v["graphs"].as_array().unwrap().iter().filter(|g| !g["failures"].as_array().unwrap().is_empty()).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["counterexample"].as_str().unwrap().contains("\"edges\""));
}

#[test]
fn suite_reads_a_temporary_corpus() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c4.json"), r#"{"vertices": 4, "edges": [[1,2],[3,4],[2,3],[4,1]], "expect": {"robust": true}}"#).unwrap();
    std::fs::write(dir.path().join("notes.md"), "ignored").unwrap();
    let o = run(&["suite", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().ends_with("1 passed, 0 failed\n"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let p = fixture("graphs/square-triangles-opposite.txt");
    let single = Command::new(env!("CARGO_BIN_EXE_toric-lab"))
        .args(["analyze", p.to_str().unwrap(), "--format", "json"])
        .env("TORIC_LAB_THREADS", "1")
        .output()
        .unwrap();
    let default = run(&["analyze", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&single), 0);
    assert_eq!(single.stdout, default.stdout);
}
