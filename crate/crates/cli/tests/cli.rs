use std::path::PathBuf;
use std::process::{Command, Output};

use colorlie::problem::Problem;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn colorlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = colorlie(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, _) = run(&all);
    (code, serde_json::from_str(&stdout).expect("JSON output"))
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn validate_z3() {
    let (code, v) = run_json(&["validate", &path("z3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
    assert_eq!(v["components"][0]["degree"], serde_json::json!([2]));
}

#[test]
fn validate_rejects_bad_bicharacter() {
    let (code, _, stderr) = run(&["validate", &path("bad_bicharacter.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("root of unity"), "{stderr}");
}

#[test]
fn validate_rejects_floats_with_position() {
    let (code, _, stderr) = run(&["validate", &path("float.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 5"), "{stderr}");
    assert!(stderr.contains("floating-point"), "{stderr}");
}

#[test]
fn validate_empty_generators() {
    let (code, v) = run_json(&["validate", &path("empty.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 0);
}

#[test]
fn missing_file_is_a_validation_failure() {
    let (code, _, _) = run(&["validate", "/nonexistent/problem.json"]);
    assert_eq!(code, 2);
}

fn dims(series: &Value) -> Vec<u64> {
    series
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["dim"].as_u64().unwrap())
        .collect()
}

#[test]
fn series_reports() {
    let (code, v) = run_json(&["series", &path("z3.json")]);
    assert_eq!(code, 0);
    assert_eq!(dims(&v["derived"]), vec![1, 0]);
    assert_eq!(v["solvable"], true);

    let (_, v) = run_json(&["series", &path("heisenberg.json")]);
    assert_eq!(dims(&v["lower_central"]), vec![3, 1, 0]);
    assert_eq!(v["nilpotent"], true);

    let (_, v) = run_json(&["series", &path("empty.json")]);
    assert_eq!(dims(&v["derived"]), vec![0]);
    assert_eq!(dims(&v["lower_central"]), vec![0]);

    let (_, v) = run_json(&["series", &path("borel.json")]);
    assert_eq!(v["solvable"], true);
    assert_eq!(v["nilpotent"], false);
}

#[test]
fn triangularize_borel() {
    let (code, v) = run_json(&["triangularize", &path("borel.json")]);
    assert_eq!(code, 0);
    let basis: Vec<&Value> = v["basis"].as_array().unwrap().iter().map(|b| &b["flat"]).collect();
    assert_eq!(basis, vec![&serde_json::json!(["1", "0"]), &serde_json::json!(["0", "1"])]);
    for m in v["matrices"].as_array().unwrap() {
        assert_eq!(m["matrix"][1][0], "0");
    }
    assert_eq!(v["weights"][0], serde_json::json!(["1", "0"]));
}

#[test]
fn triangularize_z3_is_a_hypothesis_failure() {
    let (code, _, stderr) = run(&["triangularize", &path("z3.json")]);
    assert_eq!(code, 3);
    assert!(stderr.contains("TorsionGrading"), "{stderr}");

    let (code, v) = run_json(&["--skip-hypotheses", "triangularize", &path("z3.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "NoHomogeneousEigenvector");
}

#[test]
fn triangularize_rotation_is_a_field_failure() {
    let (code, stdout, stderr) = run(&["triangularize", &path("rotation.json")]);
    assert_eq!(code, 4);
    assert!(stdout.is_empty());
    assert!(stderr.contains("t^2 + 1"), "{stderr}");
}

#[test]
fn triangularize_graded_example() {
    let (code, stdout, _) = run(&["triangularize", &path("diag_shift.json")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("v1: [1]@1"), "{stdout}");
    assert!(stdout.contains("[3 0]\n[0 2]"), "{stdout}");
}

#[test]
fn chain_reports() {
    let (code, v) = run_json(&["chain", &path("heisenberg.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([0, 1, 2, 3]));
    // L_1 is the center, spanned by e13.
    assert_eq!(
        v["basis"][0]["matrix"],
        serde_json::json!([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]])
    );

    let (code, v) = run_json(&["chain", &path("line.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([0, 1]));

    let (code, _, _) = run(&["chain", &path("z3.json")]);
    assert_eq!(code, 3);
}

#[test]
fn demo_z3() {
    let (code, stdout, _) = run(&["demo-z3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("deg A = 2"));
    assert!(stdout.contains("A^3 = I: true"));
    assert!(stdout.contains("triangularizable: false"));

    let (code, v) = run_json(&["demo-z3"]);
    assert_eq!(code, 0);
    assert_eq!(v["exhaustive_orderings_checked"], 6);
    assert_eq!(v["triangularizable"], false);
    assert_eq!(v["degree"], serde_json::json!([2]));
    assert_eq!(v["char_poly"], "t^3 - 1");
    assert!(v["orderings"]
        .as_array()
        .unwrap()
        .iter()
        .all(|o| o["upper_triangular"] == false));
}

#[test]
fn policies_agree() {
    let base = run(&["triangularize", &path("diag_shift.json")]);
    for policy in ["deterministic", "probabilistic", "auto"] {
        let out = run(&["--policy", policy, "--seed", "7", "triangularize", &path("diag_shift.json")]);
        assert_eq!(out, base, "{policy}");
    }
    let (code, _, _) = run(&["--policy", "sometimes", "validate", &path("z3.json")]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "chain", &path("diag_shift.json")]);
    let b = run(&["--json", "chain", &path("diag_shift.json")]);
    assert_eq!(a, b);
}

#[test]
fn round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["z3.json", "heisenberg.json", "diag_shift.json", "line.json", "empty.json"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let problem = Problem::from_json(&text).unwrap();
        let copy = dir.path().join(name);
        std::fs::write(&copy, problem.to_json()).unwrap();
        let again = Problem::from_json(&std::fs::read_to_string(&copy).unwrap()).unwrap();
        assert_eq!(problem, again, "{name}");
        let copy = copy.to_string_lossy().into_owned();
        assert_eq!(run(&["validate", &path(name)]).1, run(&["validate", &copy]).1);
    }
}
