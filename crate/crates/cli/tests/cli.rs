use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output { Command::new(env!("CARGO_BIN_EXE_bicrossx")).args(args).output().unwrap() }

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--format", "json"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn spec(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn classify_reports_the_small_example() {
    let doc = json(&["classify", "--builtin", "s3_as_z2z3"]);
    assert_eq!(doc["schema"], "bicrossx/1");
    assert_eq!(doc["command"], "classify");
    assert_eq!(doc["dims"], serde_json::json!([2, 3]));
    assert_eq!(doc["factorization"]["order"], 6);
    let ids: Vec<&str> = doc["calculi"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["C1R1", "C2R1"]);
    assert_eq!(doc["calculi"][1]["h0_is_scalars"], true);
}

#[test]
fn cohomology_of_the_z6_side() {
    let doc = json(&["cohomology", "--builtin", "z6_s3", "--calculus", "C2R1", "--max-degree", "1"]);
    let h = &doc["calculi"][0]["cohomology"];
    assert_eq!(h["betti"], serde_json::json!([6, 24]));
    assert_eq!(h["theta_in_h1"], true);
    assert_eq!(doc["options"]["max_degree"], 1);
}

#[test]
fn exterior_relations_are_listed() {
    let doc = json(&["exterior", "--builtin", "s3_as_z2z3", "--calculus", "C1R1"]);
    let e = &doc["calculi"][0]["exterior"];
    assert_eq!(e["lambda_dims"], serde_json::json!([1, 2, 1, 0]));
    assert_eq!(e["stop"], serde_json::json!({"kind": "vanished", "degree": 3}));
    assert_eq!(e["quadratic_relations"].as_array().unwrap().len(), 3);
}

#[test]
fn cartan_needs_a_calculus() {
    let out = run(&["cartan", "--builtin", "s3_as_z2z3"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&["cartan", "--builtin", "s3_as_z2z3", "--calculus", "C2R1"]);
    let c = &doc["calculus"];
    assert_eq!(c["braiding"].as_array().unwrap().len(), 9);
    assert_eq!(c["commutation"]["d_group"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_passes_on_the_catalog() {
    for name in ["s3_as_z2z3", "functions:(1 2),(1 2 3)", "group:(1 2),(1 2 3)"] {
        let out = run(&["verify", "--builtin", name, "--samples", "20"]);
        assert!(out.status.success(), "{name}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("overall          PASS"));
    }
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        vec!["classify", "--builtin", "no_such_group"],
        vec!["classify"],
        vec!["cohomology", "--builtin", "s3_as_z2z3", "--calculus", "C9R9"],
        vec!["classify", "--builtin", "tensor:(1 2 3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn spec_file_with_generator_lists() {
    let p = spec("s3.spec", "# S3 = Z3·Z2\nname = s3\nx.generators = [(1 2), (1 2 3)]\ng.generators = [x2]\nm.generators = [x1]\nformat = json\n");
    let out = run(&["classify", "--spec", p.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["dims"], serde_json::json!([2, 3]));
    assert_eq!(doc["factorization"]["name"], "s3");
    assert_eq!(doc["input"]["m_generators"], serde_json::json!(["x1"]));
}

#[test]
fn spec_file_with_builtin_and_options() {
    let p = spec("z6.spec", "builtin = z6_s3\nmax_degree = 1\nconductor = 6\n");
    let out = run(&["cohomology", "--spec", p.to_str().unwrap(), "--calculus", "C3R1", "--format", "json"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["calculi"][0]["cohomology"]["betti"], serde_json::json!([1, 1]));
}

#[test]
fn malformed_spec_files_exit_with_two() {
    for (name, body) in [
        ("unknown.spec", "builtin = z6_s3\ncolour = red\n"),
        ("dup.spec", "builtin = z6_s3\nbuiltin = double_s3\n"),
        ("both.spec", "builtin = z6_s3\nx.generators = [(1 2)]\n"),
        ("partial.spec", "x.generators = [(1 2), (1 2 3)]\ng.generators = [x1]\n"),
        ("conductor.spec", "builtin = z6_s3\nconductor = 12\n"),
        ("notfactor.spec", "x.generators = [(1 2), (1 2 3)]\ng.generators = [x1]\nm.generators = [x1]\n"),
        ("noline.spec", "builtin z6_s3\n"),
    ] {
        let p = spec(name, body);
        let out = run(&["classify", "--spec", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(&["classify", "--spec", "/nonexistent/file.spec"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_output_is_readable() {
    let out = run(&["cohomology", "--builtin", "s3_as_z2z3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Λ dims 1:3:4:3:1  Betti 1:1:0:1:1"), "{text}");
    assert!(text.starts_with("s3_as_z2z3  |X| = 6"));
}
