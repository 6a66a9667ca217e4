use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_cdga")).args(args).output().unwrap();
    let report = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), report, String::from_utf8_lossy(&stderr).into_owned())
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn betti(v: &Value) -> Vec<u64> {
    v["betti"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn verify_accepts_the_s2_model() {
    let (code, r, _) = run(&["verify", &fixture("s2_model.toml")]);
    assert_eq!(code, 0);
    assert_eq!(r["violations"], serde_json::json!([]));
    assert_eq!(betti(&r), [1, 0, 1, 0, 0, 1, 0, 1]);
}

#[test]
fn verify_reports_axiom_violations() {
    let dir = tempfile::tempdir().unwrap();
    // d(dc) = db = a², so d² ≠ 0.
    let bad = write(
        &dir,
        "bad.toml",
        r#"
max_degree = 4
truncate = true
[[generators]]
name = "a"
degree = 2
[[generators]]
name = "b"
degree = 3
[[generators]]
name = "c"
degree = 2
[differentials]
b = "a^2"
c = "b"
"#,
    );
    let (code, r, stderr) = run(&["verify", &bad]);
    assert_eq!(code, 2, "{stderr}");
    assert!(r["violations"][0].as_str().unwrap().contains("d∘d"));
}

#[test]
fn exit_codes_follow_the_error_class() {
    let s4 = fixture("s4.toml");
    let (code, _, _) = run(&["conf2-disk-bundle", "--base", &s4, "--euler", "x", "--rank", "3"]);
    assert_eq!(code, 3);
    let (code, r, _) = run(&["conf2-disk-bundle", "--base", &s4, "--euler", "x +", "--rank", "4"]);
    assert_eq!(code, 1);
    assert!(r["error"].as_str().unwrap().starts_with("parse error"));
    let (code, _, _) = run(&["conf2-disk-bundle", "--base", &s4]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["cohomology", "/nonexistent.toml"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn report_goes_to_the_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (code, stdout, _) = run(&["series", &fixture("s3xs3.toml"), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, Value::Null);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(betti(&r), [1, 0, 0, 2, 0, 0, 1]);
    assert_eq!(r["command"][0], "series");
}

#[test]
fn cohomology_lists_the_ring() {
    let (code, r, _) = run(&["cohomology", &fixture("s3xs3.toml")]);
    assert_eq!(code, 0);
    let products = r["ring"]["products"].as_array().unwrap();
    assert!(products.contains(&serde_json::json!(["[y]", "[y']", "[y*y']"])));
    assert!(products.contains(&serde_json::json!(["[y']", "[y]", "-[y*y']"])));
}

#[test]
fn massey_on_a_formal_algebra_finds_nothing() {
    let (code, r, _) = run(&["massey", &fixture("s4xs4.toml")]);
    assert_eq!(code, 0);
    assert_eq!(r["massey_search"]["nontrivial"], 0);
}

#[test]
fn trivial_bundle_triple_is_not_defined() {
    let (code, r, _) = run(&[
        "conf2-disk-bundle",
        "--base",
        &fixture("s4.toml"),
        "--euler",
        "0",
        "--rank",
        "4",
        "--massey",
        "[x⊗1],[1⊗x],[1⊗x]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["massey"][0]["defined"], false);
}

#[test]
fn wrong_presentation_fails_in_degree_eleven() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("presentation_s4xr4.toml"))
        .unwrap()
        .replace("\"u*x - u*x'\"", "\"u*x + 2*u*x'\"");
    let wrong = write(&dir, "wrong.toml", &text);
    let (code, r, _) = run(&[
        "conf2-disk-bundle",
        "--base",
        &fixture("s4.toml"),
        "--euler",
        "0",
        "--rank",
        "4",
        "--check-presentation",
        &wrong,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["presentation"]["passed"], false);
    assert_eq!(r["presentation"]["witness_degree"], 11);
}

#[test]
fn pretty_route_from_files_matches_the_bundle_command() {
    let dir = tempfile::tempdir().unwrap();
    let total = write(
        &dir,
        "hopf.toml",
        r#"
name = "disk bundle over S4"
relations = ["x^2", "zbar^2 - x*zbar"]
[[generators]]
name = "x"
degree = 4
[[generators]]
name = "zbar"
degree = 4
[orientation]
degree = 8
class = "-x*zbar"
"#,
    );
    let s4 = fixture("s4.toml");
    let (code, pretty, stderr) = run(&[
        "conf2-pretty",
        "--manifold",
        &total,
        "--boundary",
        &s4,
        "--map",
        "x=x",
        "--map",
        "zbar=x",
        "--massey",
        "auto",
    ]);
    assert_eq!(code, 0, "{stderr}");
    let (_, bundle, _) = run(&["conf2-disk-bundle", "--base", &s4, "--euler", "x", "--rank", "4", "--massey", "auto"]);
    assert_eq!(betti(&pretty), betti(&bundle));
    assert_eq!(pretty["massey"][0]["nontrivial"], true);
    assert_eq!(pretty["square"]["commutes"], true);
}

#[test]
fn pretty_route_rejects_a_map_missing_a_generator() {
    let (code, r, _) = run(&[
        "conf2-pretty",
        "--manifold",
        &fixture("s3xs3.toml"),
        "--boundary",
        &fixture("s4.toml"),
        "--map",
        "y=0",
    ]);
    assert_eq!(code, 1);
    assert!(r["error"].as_str().unwrap().contains("y'"));
}

#[test]
fn complement_reports_hypotheses() {
    let (code, r, _) = run(&["complement", "--dim", "5", "--point", "interior"]);
    assert_eq!(code, 0);
    assert_eq!(betti(&r), [1, 0, 0, 0, 1]);
    assert!(!r["hypotheses_assumed"].as_array().unwrap().is_empty());
}
