//! End-to-end tests of the command-line interface: output shapes, exit
//! codes, determinism and the complex cache.

use std::process::{Command, Output};

fn braidhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidhom"))
        .args(args)
        .env_remove("BRAIDHOM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn compute_symplectic_n3_shape() {
    let out = braidhom(&[
        "compute", "--type", "a", "--n", "3", "--coeff", "symplectic", "--max-degree", "2",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["type"], "A");
    assert_eq!(doc["n"], 3);
    assert_eq!(doc["coefficients"], "symplectic");
    let h0 = &doc["homology"][0];
    assert_eq!(h0["degree"], 0);
    assert_eq!(h0["rank"], 0);
    assert_eq!(h0["torsion"].as_array().unwrap().len(), 0);
    assert!(doc["engine_version"].is_string());
    assert!(doc["sign_convention"].is_string());
    assert_eq!(doc["annihilator_exponent_per_degree"][1], 2);
}

#[test]
fn compute_trivial_n3_degree_one_is_z() {
    let out = braidhom(&[
        "compute", "--type", "a", "--n", "3", "--coeff", "trivial", "--max-degree", "2",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let h1 = &doc["homology"][1];
    assert_eq!(h1["rank"], 1);
    assert_eq!(h1["torsion"].as_array().unwrap().len(), 0);
}

#[test]
fn compute_single_strand_trivial_group() {
    let out = braidhom(&["compute", "--type", "a", "--n", "1", "--coeff", "trivial"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["homology"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["rank"], 1);
}

#[test]
fn normal_form_output() {
    let out = braidhom(&["nf", "--type", "a", "--n", "3", "1 -1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Δ^0 · ()\n");
    let a = braidhom(&["nf", "--type", "a", "--n", "3", "1 2 1"]);
    let b = braidhom(&["nf", "--type", "a", "--n", "3", "2 1 2"]);
    assert_eq!(stdout(&a), stdout(&b));
    let sq = braidhom(&["nf", "--type", "a", "--n", "3", "1 1"]);
    assert_eq!(stdout(&sq), "Δ^0 · (1)(1)\n");
}

#[test]
fn exit_codes() {
    // usage errors are 2
    let out = braidhom(&["nf", "--type", "a", "--n", "3", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = braidhom(&["compute", "--type", "b", "--n", "2", "--coeff", "symplectic"]);
    assert_eq!(out.status.code(), Some(2));
    let out = braidhom(&["verify", "no-such-suite", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // assertion failures are 1
    let out = braidhom(&["verify", "double-cover", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    // all-pass suites are 0
    let out = braidhom(&["verify", "splitting", "--n", "2", "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = braidhom(&["verify", "torsion-theorem", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn chain_rank_guardrail_refuses_cleanly() {
    let out = braidhom(&[
        "compute", "--type", "a", "--n", "5", "--coeff", "trivial", "--max-chain-rank", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("refusing"), "clean refusal message, got: {err}");
}

#[test]
fn byte_identical_reruns_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "compute", "--type", "b", "--n", "3", "--coeff", "sign-cover", "--format", "json",
        "--cache-dir",
    ];
    let run = |dir: &str| {
        let mut full: Vec<&str> = args.to_vec();
        full.push(dir);
        braidhom(&full)
    };
    let dir_str = dir.path().to_str().unwrap();
    let first = run(dir_str);
    assert!(first.status.success());
    // the cache directory now holds a complex file
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!entries.is_empty(), "cache file written");
    let second = run(dir_str);
    assert_eq!(stdout(&first), stdout(&second), "cache hit must be byte-identical");
    // and identical without any cache at all
    let mut no_cache: Vec<&str> = args[..args.len() - 1].to_vec();
    let third = braidhom(&no_cache.drain(..).collect::<Vec<_>>());
    assert_eq!(stdout(&first), stdout(&third));
}

#[test]
fn custom_representation_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "generator_images": [[[1,-1],[0,1]],[[1,0],[1,1]]]}"#,
    )
    .unwrap();
    let coeff = format!("custom:{}", path.display());
    let out = braidhom(&["compute", "--type", "a", "--n", "3", "--coeff", &coeff]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // the file encodes the symplectic representation, so the table matches
    assert_eq!(doc["homology"][1]["torsion"][0], 2);
    // invalid file is rejected with a usage error
    std::fs::write(&path, r#"{"dimension": 1, "generator_images": [[[1]],[[-1]]]}"#).unwrap();
    let out = braidhom(&["compute", "--type", "a", "--n", "3", "--coeff", &coeff]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_are_machine_readable() {
    let out = braidhom(&["verify", "integrity", "--max-rank", "2", "--seed", "5"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["suite"], "integrity");
    assert_eq!(doc["seed"], 5);
    assert!(doc["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
    // human summary goes to stderr
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("suite integrity PASS"));
}

#[test]
fn csv_format() {
    let out = braidhom(&[
        "compute", "--type", "a", "--n", "5", "--coeff", "symplectic", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,rank,torsion"));
    assert_eq!(lines.next(), Some("0,0,"));
    assert_eq!(lines.next(), Some("1,0,2"));
}
