use std::path::PathBuf;
use std::process::{Command, Output};

fn psm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psm"))
        .args(args)
        .output()
        .unwrap()
}

fn scenario() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/scenarios/intersection.psm")
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_applies_signal_law() {
    let o = psm(&["eval", "? r:Q r1:P ?- r:Q r1:P ! r:Q r1:P"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "! r:Q r1:P");
}

#[test]
fn build_then_query() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let o = psm(&[
        "build",
        &scenario(),
        "-o",
        json.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("nodes"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let g = json.to_str().unwrap();
    let o = psm(&["paths", g, "--to", "00", "--capture-free"]);
    assert!(o.status.success());
    assert!(!stdout(&o).starts_with("0 path"));

    let o = psm(&["paths", g, "--to", "0B", "--capture-free"]);
    assert_eq!(stdout(&o).trim(), "0 path(s)");

    let o = psm(&["capabilities", g, "--action", "0B"]);
    assert!(stdout(&o).contains("? r:Q r1:P"));

    let o = psm(&["paths", g, "--to", "? r:Q g1:P"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn build_to_stdout_is_stable() {
    let a = psm(&["build", &scenario()]);
    let b = psm(&["build", &scenario()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_error_exits_2() {
    assert_eq!(psm(&["paths"]).status.code(), Some(2));
    assert_eq!(psm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_1() {
    let o = psm(&["check", "/nonexistent/x.psm"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}
