use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn weiljet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weiljet")).args(args).output().expect("binary runs")
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(weiljet(&["verify", "sl2", "--s0", "0"]).status.code(), Some(2));
    assert_eq!(weiljet(&["verify", "cocycle", "--n", "3"]).status.code(), Some(2));
    assert_eq!(weiljet(&["emit", "matrix", "--op", "T"]).status.code(), Some(2));
    assert_eq!(weiljet(&["verify", "cocycle", "--words", "/no/such/file"]).status.code(), Some(2));
}

#[test]
fn report_envelope() {
    let out = weiljet(&["verify", "sl2", "--vars", "2", "--jet-order", "2", "--s0", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["suite"], "sl2");
    assert_eq!(r["exact"], true);
    let names: Vec<_> = r["cases"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn emit_formats() {
    let json = weiljet(&["emit", "matrix", "--op", "S", "--jet-order", "3", "--s0", "1"]);
    assert_eq!(String::from_utf8(json.stdout).unwrap().trim(), r#"[[1,"1/2","-1/8"],[0,1,"1/2"],[0,0,1]]"#);
    let csv = weiljet(&["emit", "matrix", "--op", "S", "--jet-order", "2", "--s0", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "1,1/2\n0,1\n");
    let sigma_j = weiljet(&["emit", "matrix", "--op", "sigmaJ", "--jet-order", "2", "--s0", "1"]);
    assert_eq!(sigma_j.status.code(), Some(0));
    let rho = weiljet(&["emit", "matrix", "--op", "rho-central", "--jet-order", "2", "--s0", "1"]);
    assert_eq!(rho.status.code(), Some(0));
}

#[test]
fn probe_file() {
    let path = fixture(
        "probes.json",
        r#"[{"poly": [{"exps": [2], "coeff": {"base": "1", "coeffs": [[{"cyclo": ["1","0","0","0"]}]]}}],
             "phase": {"Q": [[["-1","0"]]]}}]"#,
    );
    let out = weiljet(&["verify", "fourier", "--jet-order", "2", "--s0", "1", "--probes", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["cases"].as_array().unwrap().iter().any(|c| c["name"] == "inversion/probe00"));
}

#[test]
fn word_file_detects_a_wrong_product() {
    let path = fixture(
        "words.json",
        r#"[{"w1": ["J"], "w2": ["J"]}, {"w1": [{"diag": [[2]]}], "w2": ["J"], "w12": ["J"]}]"#,
    );
    let out = weiljet(&["verify", "cocycle", "--n", "1", "--words", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let cases = r["cases"].as_array().unwrap();
    assert_eq!(cases[0]["status"], "pass");
    assert_eq!(cases[1]["status"], "fail");
}

#[test]
fn module_spec_files() {
    let good = fixture("jordan.json", r#"{"n": 1, "dim": 2, "z_matrix": [[2, 1], [0, 2]], "degree_bound": 4}"#);
    assert_eq!(weiljet(&["verify", "kashiwara", "--spec", good.to_str().unwrap()]).status.code(), Some(0));
    let zero = fixture("zero.json", r#"{"n": 1, "dim": 1, "z_matrix": [[0]], "degree_bound": 3}"#);
    let out = weiljet(&["verify", "kashiwara", "--spec", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert!(r["cases"].as_array().unwrap().iter().any(|c| c["name"] == "spec/z_invertible" && c["status"] == "fail"));
}
