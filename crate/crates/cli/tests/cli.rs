use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn pencil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencil")).args(args).output().expect("run pencil")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    p
}

#[test]
fn hilbert_of_the_minus_one_plane() {
    let o = pencil(&["hilbert", &data("minus_one.pres")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13]"), "{out}");
    assert!(out.contains("1/(1 - 2*t + t^2)"), "{out}");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pencil"))
        .args(["hilbert", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"field Q\ngens x:1 y:1\nrel x^2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[1, 2, 3, 5, 8, 13, 21"));
}

#[test]
fn field_flag_overrides_the_file() {
    let o = pencil(&["--field", "F(7)", "parse", &data("kj.pres")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("field F(7)"));
    assert!(stdout(&o).contains("6*y*x"));
}

#[test]
fn json_output_is_reproducible() {
    let args = ["--format", "json", "--seed", "7", "normal-check", &data("minus_one.pres"), "x^2"];
    let (a, b) = (pencil(&args), pencil(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["kind"], "normal-check");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["evidence"]["nu"], serde_json::json!(["x", "y"]));
}

#[test]
fn certificate_round_trip() {
    let o = pencil(&["--format", "json", "srns-check", &data("minus_one.pres"), "x^2", "y^2"]);
    assert_eq!(code(&o), 0);
    let path = scratch("srns_pass.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = pencil(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));

    // a certificate whose verdict was edited no longer replays
    let mut forged = json(&o);
    forged["verdict"] = "fail".into();
    let path = scratch("srns_forged.json");
    std::fs::write(&path, serde_json::to_string_pretty(&forged).unwrap()).unwrap();
    assert_eq!(code(&pencil(&["verify", path.to_str().unwrap()])), 1);
}

#[test]
fn srns_refusal_names_the_stage() {
    let o = pencil(&["--format", "json", "srns-check", &data("minus_one.pres"), "x^2", "y^2 + y"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["evidence"]["failing_stage"], "g-normality");
}

#[test]
fn witness_chain_and_obstruction() {
    let ok = pencil(&["st-verify", "--chain", &data("f4_f9.json")]);
    assert_eq!(code(&ok), 0);
    let no = pencil(&["st-verify", "--chain", &data("inequivalent.json")]);
    assert_eq!(code(&no), 1);
    assert!(stdout(&no).contains("degree patterns differ"), "{}", stdout(&no));
}

#[test]
fn frobenius_labels() {
    let o = pencil(&["--format", "json", "classify4", &data("sqrt3.pres")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["evidence"]["label"], "k x k[x]/(x^3)");

    let o = pencil(&["clifford", &data("conic_pencil.pres"), "--pencil", "z^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("label: k^4"));

    let o = pencil(&["dehomogenize", &data("conic_pencil.pres")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("# label k^4"));
}

#[test]
fn quiver_isomorphism() {
    let o = pencil(&["--format", "json", "iso-verify", &data("quiver_iso.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "pass");
}

#[test]
fn normal_search_over_a_prime_field() {
    let o = pencil(&["--field", "F(7)", "normal-search", &data("kj.pres"), "--degree", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 normal elements of degree 1"), "{}", stdout(&o));
}

#[test]
fn reproduce_a_table() {
    let o = pencil(&["--format", "json", "reproduce", "--table", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["ok"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let bad = pencil(&["gb", &data("bad_graded.pres")]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 4"));
    assert_eq!(code(&pencil(&["normal-check", &data("kj.pres")])), 2);
    assert_eq!(code(&pencil(&["reproduce", "--table", "9"])), 2);
    assert_eq!(code(&pencil(&["hilbert", &data("missing.pres")])), 2);
    let o = pencil(&["--format", "json", "reproduce", "--table", "9"]);
    assert!(json(&o)["error"].as_str().unwrap().contains("no table 9"));
}
