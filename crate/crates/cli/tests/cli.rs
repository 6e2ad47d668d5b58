use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_string_lossy().into_owned()
}

fn qlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlogic")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = qlogic(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

#[test]
fn tp_on_the_half_pair() {
    let (code, v) = report(&["tp", "-i", &fixture("ab_pair.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["exists"], json!(true));
    assert_eq!(v["s"], json!(0.5));
    let (_, v) = report(&["--exact", "tp", "-i", &fixture("ab_pair.json")]);
    assert_eq!(v["s"], json!("1/2"));
}

#[test]
fn gen_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let path = path.to_str().unwrap();
    let out = qlogic(&["gen", "--K", "C", "--m", "2", "--n", "3", "--s", "0.25", "--seed", "4", "-o", path]);
    assert!(out.status.success());
    let (code, v) = report(&["tp", "-i", path]);
    assert_eq!(code, 0);
    assert_eq!(v["s"], json!(0.25));
}

#[test]
fn family_fixtures_are_exact() {
    for name in ["family_R.json", "family_C.json", "family_H.json", "octonion_h3.json"] {
        let (code, v) = report(&["--exact", "tp", "-i", &fixture(name)]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["s"], json!("1/2"), "{name}");
    }
}

#[test]
fn classify_and_decompose() {
    let (code, v) = report(&["--exact", "classify", "-i", &fixture("family_C.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["case"], json!("isoclinic-plus-orthogonal"));
    assert_eq!(v["dim"], json!(3));
    assert!(v["isoclinic"]["symmetry"].is_object());
    let (code, v) = report(&["--exact", "decompose", "-i", &fixture("family_H.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], json!(true));
    assert_eq!(v["trace"]["equality_holds"], json!(true));
}

#[test]
fn oracle_agrees_and_refuses_octonions() {
    let (code, v) = report(&["oracle", "-i", &fixture("family_H.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], json!(true));
    let (code, v) = report(&["oracle", "-i", &fixture("octonion_h3.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("unsupported"));
}

#[test]
fn omp_fixtures() {
    let (code, v) = report(&["omp", "validate", "-i", &fixture("boolean8.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["elements"], json!(8));
    let (_, v) = report(&["omp", "validate", "-i", &fixture("greechie_chain.json")]);
    assert_eq!(v["valid"], json!(true));
    let (_, v) = report(&["--exact", "omp", "strong", "-i", &fixture("greechie_chain.json")]);
    assert_eq!(v["strong"], json!(true));
    let (_, v) = report(&["--exact", "omp", "tp", "-i", &fixture("h2r_sublogic.json"), "--p", "a", "--q", "b"]);
    assert_eq!(v["s"], json!("1/2"));
    assert_eq!(v["jordan"]["s"], json!("1/2"));
    let (_, v) = report(&["omp", "tp", "-i", &fixture("boolean8.json"), "--p", "a", "--q", "a+b"]);
    assert_eq!(v["s"], json!(1));
}

#[test]
fn exit_codes() {
    let out = qlogic(&["tp", "--json", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qlogic(&["tp", "-i", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qlogic(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let zero = r#"{"p": {"factors": [{"ring": "R", "n": 1}], "blocks": [[[0]]]},
                   "q": {"factors": [{"ring": "R", "n": 1}], "blocks": [[[1]]]}}"#;
    let (code, v) = report(&["tp", "--json", zero]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("zero_projection"));
    let (code, v) = report(&["--exact", "gen", "--K", "C", "--m", "1", "--n", "1", "--s", "1/4"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("construction"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["noclone", "--m", "2", "--n", "2", "--s", "0.5", "--trials", "300", "--seed", "42"];
    let (a, b) = (qlogic(&args), qlogic(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], json!(42));
    assert!(v["best_residual"].as_f64().unwrap() >= 1e-3);
    assert_eq!(v["best_candidate_chain"]["is_cloner"], json!(false));

    let gen = ["--exact", "gen", "--K", "H", "--m", "2", "--n", "3", "--s", "9/25", "--seed", "3"];
    assert_eq!(qlogic(&gen).stdout, qlogic(&gen).stdout);
}

#[test]
fn noclone_orthogonal_pair_finds_cloner() {
    let (code, v) = report(&["noclone", "--s", "0", "--trials", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["best_residual"], json!(0));
    assert_eq!(v["best_candidate_chain"]["is_cloner"], json!(true));
    assert_eq!(v["best_candidate_chain"]["s"], json!(0));
}

#[test]
fn selftest_passes() {
    let (code, v) = report(&["selftest"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], json!(true));
}
