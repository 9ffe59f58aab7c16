use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use serde_json::{json, Value};

fn temp(content: &Value) -> PathBuf {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!("kron-cli-{}-{}.json", std::process::id(), NEXT.fetch_add(1, Ordering::SeqCst)));
    std::fs::write(&path, content.to_string()).unwrap();
    path
}

fn kron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kron")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> Value {
    let out = kron(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn triple(l: &[u64], m: &[u64], p: &[u64]) -> PathBuf {
    temp(&json!({ "lambda": { "parts": l }, "mu": { "parts": m }, "pi": { "parts": p } }))
}

fn big(v: &Value) -> BigUint {
    v.as_str().unwrap().parse().unwrap()
}

fn m0() -> PathBuf {
    temp(&json!({ "q": 2, "triples": [[1, 1, 1], [2, 1, 2], [1, 2, 2]] }))
}

#[test]
fn coeff_and_bounds() {
    let t = triple(&[1, 1], &[2], &[2]);
    let t = t.to_str().unwrap();
    assert_eq!(run_ok(&["coeff", t]), json!({ "k": "0" }));
    assert_eq!(run_ok(&["bounds", t]), json!({ "p": "0", "k": "0", "t": "2" }));
    let big_t = triple(&[40], &[40], &[40]);
    let v = run_ok(&["bounds", big_t.to_str().unwrap()]);
    assert!(v.get("k").is_none() && v["note"].is_string());
}

#[test]
fn decide_methods() {
    let t = triple(&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]);
    let v = run_ok(&["decide", "--method", "hook", t.to_str().unwrap()]);
    assert_eq!(v["t_positive"], json!(false));
    assert!(v["certificate"]["flow"].is_object());
    let t = triple(&[2, 1, 1], &[2, 1, 1], &[2, 1, 1]);
    let v = run_ok(&["decide", t.to_str().unwrap()]);
    assert_eq!(v["t_positive"], json!(true));
    assert!(v["certificate"]["design"].is_object());
    let out = kron(&["decide", "--method", "sideways", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_lattice_form() {
    let t = triple(&[2, 2, 2], &[2, 2, 1, 1], &[2, 2, 1, 1]);
    let v = run_ok(&["classify", t.to_str().unwrap()]);
    assert_eq!(v["simplex_like"], json!(true));
    assert_eq!(v["lattice_permutation_form"], json!({ "r": "1", "d": { "1": "2" } }));
    assert!(v["pedestalled"].is_object());
    assert_eq!(v["hook"], json!([]));
}

#[test]
fn reduce_large_example_and_verify_it() {
    let trace = std::env::temp_dir().join(format!("kron-cli-trace-{}.json", std::process::id()));
    let v = run_ok(&["reduce", "--epsilon", "1", m0().to_str().unwrap(), "--trace", trace.to_str().unwrap()]);
    let ten = BigUint::from(10u8);
    assert!(big(&v["stats"]["m"]) > ten.pow(16));
    assert!(big(&v["stats"]["size"]) > ten.pow(46));
    assert_eq!(v["constraints"]["all_hold"], json!(true));
    let tr: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(tr.as_array().unwrap().len(), 9);
    let inst = temp(&v["instance"]);
    let r = run_ok(&["verify", "--epsilon", "1", inst.to_str().unwrap()]);
    assert_eq!(r["all_hold"], json!(true));
    // same input, same output
    assert_eq!(run_ok(&["reduce", "--epsilon", "1", m0().to_str().unwrap()]), {
        let mut w = v.clone();
        w.as_object_mut().unwrap().remove("trace");
        w
    });
}

#[test]
fn verify_reports_failures_in_the_payload() {
    let t = triple(&[3, 1], &[2, 2], &[2, 2]);
    let r = run_ok(&["verify", "--epsilon", "1", t.to_str().unwrap()]);
    assert_eq!(r["all_hold"], json!(false));
    let lam = temp(&json!({ "parts": [4, 2] }));
    let r = run_ok(&["verify", "--epsilon", "1", "--candidate-r", "2", "--b", "3", lam.to_str().unwrap()]);
    let six = r["constraints"].as_array().unwrap().iter().find(|c| c["constraint"] == "6").unwrap();
    assert_eq!(six["holds"], json!(true));
}

#[test]
fn generate_instances() {
    let v = run_ok(&["generate", "--count", "3"]);
    let items = v["instances"].as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items[0]["bits"], json!(""));
    let v = run_ok(&["generate", "--bits", "a", "--bits", "3", "--epsilon", "1"]);
    let items = v["instances"].as_array().unwrap();
    assert_eq!(items[0]["bits"], json!("1010"));
    assert_eq!(items[1]["output"]["constraints"]["all_hold"], json!(true));
    assert_eq!(kron(&["generate"]).status.code(), Some(2));
}

#[test]
fn solve_problems() {
    assert_eq!(run_ok(&["solve", "--problem", "3dm", m0().to_str().unwrap()]), json!({ "yes": false }));
    let z = temp(&json!({ "n": 2, "z": { "2": 1, "4": 1 } }));
    assert_eq!(run_ok(&["solve", "--problem", "permutation", z.to_str().unwrap()]), json!({ "yes": true }));
    let y = temp(&json!({ "y": [["2", "1"], ["3", "1"], ["7", "1"], ["8", "1"]] }));
    assert_eq!(run_ok(&["solve", "--problem", "rnmts", y.to_str().unwrap()]), json!({ "yes": false }));
}

#[test]
fn exit_codes() {
    let bad = temp(&json!({ "lambda": "x" }));
    let out = kron(&["coeff", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["status"], json!("error"));
    let t = triple(&[40], &[40], &[40]);
    let out = kron(&["coeff", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["kind"], json!("budget_exceeded"));
    let out = kron(&["reduce", "--epsilon", "0", m0().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(kron(&["frobnicate"]).status.code(), Some(2));
}
