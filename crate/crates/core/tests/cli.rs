use std::process::Command;

use coopkit::algebra::FiniteAlgebra;

fn coopkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coopkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn corpus(file: &str) -> String {
    format!("{}/corpus/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("coopkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_proof_in_extension() {
    let (code, out) = coopkit(&["check-proof", &corpus("a1.json"), "--logic", "CLc"]);
    assert_eq!(code, 0, "{out}");
    let (code, _) = coopkit(&["check-proof", &corpus("con.json"), "--logic", "CLu"]);
    assert_eq!(code, 1);
}

#[test]
fn decide_prints_exact_countermodel() {
    let (code, out) = coopkit(&["decide", "--eq", "x + x = x", "--ambient", "interval"]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), "countermodel in interval: x=1/2");
    let (code, out) = coopkit(&["--format", "json", "decide", "--matrix", "x + y = x => y = 0"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ambient"], "interval");
}

#[test]
fn laws_report_per_law() {
    let path = scratch("finite.json");
    std::fs::write(&path, FiniteAlgebra::lukasiewicz(3).to_json()).unwrap();
    let (code, out) = coopkit(&["laws", path.to_str().unwrap(), "--class", "hoop"]);
    assert_eq!(code, 0, "{out}");
    for law in ["m1", "r", "cwc"] {
        assert!(out.lines().any(|l| l.trim_start().starts_with(law) && l.ends_with("pass")), "{out}");
    }
    let (code, _) = coopkit(&["laws", path.to_str().unwrap(), "--class", "coop"]);
    assert_eq!(code, 1);
}

#[test]
fn translate_then_verify() {
    let path = scratch("mp.chain.json");
    let (code, _) = coopkit(&["translate", &corpus("mp.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out) = coopkit(&["verify-chain", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, _) = coopkit(&["translate", &corpus("a5.json")]);
    assert_eq!(code, 1);
}

#[test]
fn countermodel_and_envelope() {
    let (code, out) = coopkit(&["countermodel", "P |- P * P", "--class", "hoop"]);
    assert_eq!(code, 1, "{out}");
    let (code, _) = coopkit(&["countermodel", "P * (P -o Q) |- Q * (Q -o P)", "--class", "hoop", "--budget", "3"]);
    assert_eq!(code, 0);
    let (code, out) = coopkit(&["envelope", "--base", "dyadic-capped:1", "--verify-samples", "100"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "--seed", "7", "laws", "rational-capped:1", "--samples", "200"];
    assert_eq!(coopkit(&args), coopkit(&args));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(coopkit(&["eval", "P -o", "--model", "luk:3"]).0, 2);
    assert_eq!(coopkit(&["laws", "nonsense"]).0, 2);
    assert_eq!(coopkit(&["decide"]).0, 2);
}
