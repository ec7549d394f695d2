use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn charpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn charpair_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_charpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_example(dir: &Path, name: &str, param: i64) -> PathBuf {
    let out = charpair(&["example", name, "--param", &param.to_string()]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.join(format!("{name}{param}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

const SINGULAR_SQUARE: &str = r#"{"format_version":1,"rank":2,"facet_count":4,"vertices":[[0,1],[1,2],[2,3],[0,3]],"lambda":[[1,0],[0,1],[2,1],[0,1]]}"#;

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_example(dir.path(), "lens", 3);
    let out = charpair(&["validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");

    let out = charpair_stdin(&["validate", "-"], SINGULAR_SQUARE);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("determinant -2"));

    let out = charpair_stdin(&["validate", "-"], "{\"rank\": 2");
    assert_eq!(out.status.code(), Some(3));

    let out = charpair(&["validate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let out = charpair(&["validate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_json_lists_singular_vertices() {
    let out = charpair_stdin(&["--format", "json", "validate", "-"], SINGULAR_SQUARE);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["valid"], false);
    assert_eq!(value["singular_vertices"].as_array().unwrap().len(), 2);
}

#[test]
fn equiv_reports_witness_or_inequivalence() {
    let dir = tempfile::tempdir().unwrap();
    let (a1, am1) = (
        write_example(dir.path(), "square-a", 1),
        write_example(dir.path(), "square-a", -1),
    );
    let out = charpair(&["--format", "json", "equiv", a1.to_str().unwrap(), am1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["facet_bijection"].as_array().unwrap().len(), 4);

    let out = charpair(&["equiv", "--strict", a1.to_str().unwrap(), am1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let (l0, l1) = (
        write_example(dir.path(), "lens", 0),
        write_example(dir.path(), "lens", 1),
    );
    let out = charpair(&["equiv", l0.to_str().unwrap(), l1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "inequivalent\n");

    let simplex = write_example(dir.path(), "simplex", 2);
    let out = charpair(&["equiv", l0.to_str().unwrap(), simplex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_over_the_tetrahedron() {
    let tetra = stdout(&charpair(&["example", "tetrahedron"]));
    let out = charpair_stdin(&["--format", "json", "enumerate", "-", "--bound", "2"], &tetra);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["classes"], 1);
}

#[test]
fn casestudies_pass_and_unknown_is_a_usage_error() {
    for args in [
        vec!["casestudy", "cp3"],
        vec!["casestudy", "figure1", "--max-a", "3"],
        vec!["casestudy", "figure2"],
        vec!["casestudy", "s2xkcp2", "--k", "4"],
    ] {
        let out = charpair(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    }
    let out = charpair(&["--format", "json", "casestudy", "s2xkcp2", "--k", "4"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["holds"], true);
    assert!(stdout(&out).contains("(6, 2, 0)"));
    assert_eq!(charpair(&["casestudy", "rp3"]).status.code(), Some(2));
    assert_eq!(charpair(&["casestudy", "s2xkcp2", "--k", "1"]).status.code(), Some(3));
}

#[test]
fn invariants_of_the_cube_pair() {
    let doc = stdout(&charpair(&["example", "s2xkcp2", "--param", "2"]));
    let out = charpair_stdin(&["--format", "json", "invariants", "-"], &doc);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["betti"], serde_json::json!([1, 0, 3, 0, 3, 0, 1]));
    assert_eq!(value["h_vector"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(value["facet_census"]["d4"], 4);
    assert_eq!(value["generated_in_degree_two"], true);

    let lens = stdout(&charpair(&["example", "lens", "--param", "1"]));
    let out = charpair_stdin(&["invariants", "-"], &lens);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cohomology:"));
}

#[test]
fn laws_are_reproducible() {
    let doc = stdout(&charpair(&["example", "prism", "--param", "2"]));
    let a = charpair_stdin(&["laws", "-", "--seed", "9", "--trials", "25"], &doc);
    let b = charpair_stdin(&["laws", "-", "--seed", "9", "--trials", "25"], &doc);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("0 failures"));
}

#[test]
fn documents_are_canonical() {
    let doc = stdout(&charpair(&["example", "bigon-prism"]));
    let out = charpair_stdin(&["enumerate", "-"], &doc);
    assert_eq!(out.status.code(), Some(0));
    assert!(doc.starts_with("{\n  \"edges\": "));
    assert!(doc.ends_with("}\n"));
}
