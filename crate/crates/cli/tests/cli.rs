use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hookzeta")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

fn temp_json(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

#[test]
fn zeta_formats() {
    assert_eq!(ok(&["zeta", "--n", "2"]).trim(), "zeta_Q(2s) * (1+3^-s)");
    assert_eq!(ok(&["zeta", "--n", "3", "--format", "latex"]).trim(), r"\zeta_{\mathbf{Q}}(3s)\,(1+4^{-s}+16^{-s})");
    let z = json_of(&["zeta", "--n", "2", "--d", "3", "--format", "json"]);
    assert_eq!(z, json!({"n": 2, "d": 3, "riemann_exponent": 2, "local_factors": [{"p": 3, "coeffs": [1, 1]}]}));
}

#[test]
fn zeta_with_oracle() {
    ok(&["zeta", "--n", "3", "--d", "2", "--oracle", "--limit", "40"]);
}

#[test]
fn coefficients() {
    let c = json_of(&["coeffs", "--n", "2", "--limit", "10"]);
    assert_eq!(c, json!([[1, 1], [2, 0], [3, 1], [4, 1], [5, 0], [6, 0], [7, 0], [8, 0], [9, 1], [10, 0]]));
    let c = json_of(&["coeffs", "--n", "2", "--d", "1", "--limit", "12", "--oracle"]);
    let nonzero: Vec<Value> = c.as_array().unwrap().iter().filter(|r| r[1] != json!(0)).cloned().collect();
    assert_eq!(Value::from(nonzero), json!([[1, 1], [3, 1], [4, 1], [9, 1], [12, 1]]));
    assert_eq!(json_of(&["coeffs", "--n", "4", "--d", "5", "--limit", "1"]), json!([[1, 1]]));
    ok(&["coeffs", "--n", "5", "--d", "6", "--limit", "30", "--oracle"]);
}

#[test]
fn enumeration_counts() {
    let e = json_of(&["enumerate", "--n", "3", "--prime", "2", "--max-exp", "5", "--oracle"]);
    assert_eq!(e, json!({"p": 2, "counts": {"0": 1, "1": 0, "2": 1, "3": 1, "4": 1, "5": 1}}));
    let e = json_of(&["enumerate", "--n", "2", "--d", "1", "--prime", "3", "--max-exp", "4", "--oracle"]);
    assert_eq!(e["counts"], json!({"0": 1, "1": 1, "2": 1, "3": 1, "4": 1}));
    let e = json_of(&["enumerate", "--n", "4", "--prime", "2", "--max-exp", "4", "--oracle"]);
    assert_eq!(e["counts"], json!({"0": 1, "1": 0, "2": 0, "3": 0, "4": 1}));
    let e = json_of(&["enumerate", "--n", "2", "--prime", "3", "--max-exp", "2", "--lattices"]);
    assert_eq!(e["lattices"]["1"].as_array().unwrap().len(), 1);
}

#[test]
fn specht_round_trip_through_identify() {
    let s = json_of(&["specht", "--n", "2"]);
    let mats: Vec<&Value> = s["generators"]["generators"].as_array().unwrap().iter().map(|m| &m["entries"]).collect();
    assert_eq!(mats, [&json!([["1", "0"], ["-1", "-1"]]), &json!([["0", "1"], ["1", "0"]])]);
    for n in ["2", "3", "4", "5", "6"] {
        let s = json_of(&["specht", "--n", n]);
        let want = n.parse::<u64>().unwrap() + 1;
        assert_eq!(s["d"], json!(want));
        assert_eq!(s["oracle_checked"], json!(true));
        let f = temp_json(&s);
        assert_eq!(ok(&["identify", "--file", f.path().to_str().unwrap()]).trim(), want.to_string());
    }
}

#[test]
fn identify_scaled_and_identity_bases() {
    let l3 = json_of(&["specht", "--n", "2"])["lattice_basis"].clone();
    let scaled: Vec<Vec<i64>> = l3["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| 7 * x.as_str().unwrap().parse::<i64>().unwrap()).collect())
        .collect();
    let f = temp_json(&json!(scaled));
    assert_eq!(ok(&["identify", "--file", f.path().to_str().unwrap(), "--n", "2"]).trim(), "3");
    let id: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| i64::from(i == j)).collect()).collect();
    let f = temp_json(&json!(id));
    assert_eq!(ok(&["identify", "--file", f.path().to_str().unwrap(), "--n", "5"]).trim(), "1");
}

#[test]
fn identify_plain_matrices() {
    let f = temp_json(&json!([[2, 0, 1], [0, 2, 0], [0, 0, 1]]));
    assert_eq!(ok(&["identify", "--file", f.path().to_str().unwrap()]).trim(), "2");
    let f = temp_json(&json!({"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}));
    let v = json_of(&["identify", "--file", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(v, json!({"n": 2, "d": 1}));
}

#[test]
fn identify_rejects_unstable_and_malformed() {
    let f = temp_json(&json!([[2, 0, 0], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(code(&["identify", "--file", f.path().to_str().unwrap()]), Some(1));
    let f = temp_json(&json!([[1, 0], [0, 0]]));
    assert_eq!(code(&["identify", "--file", f.path().to_str().unwrap()]), Some(2));
    let f = temp_json(&json!({"rows": 3, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}));
    assert_eq!(code(&["identify", "--file", f.path().to_str().unwrap()]), Some(2));
    assert_eq!(code(&["identify", "--file", "/nonexistent/basis.json"]), Some(2));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(code(&["zeta", "--n", "1"]), Some(2));
    assert_eq!(code(&["zeta", "--n", "3", "--d", "3"]), Some(2));
    assert_eq!(code(&["enumerate", "--n", "3", "--prime", "4"]), Some(2));
    assert_eq!(code(&["coeffs", "--n", "2", "--limit", "2000", "--oracle"]), Some(2));
    assert_eq!(code(&["verify", "--n", "1"]), Some(2));
}

#[test]
fn verify_passes_and_detects_faults() {
    let r = json_of(&["verify", "--n", "3", "--max-exp", "6", "--limit", "20", "--samples", "10"]);
    assert_eq!(r["passed"], json!(true));
    let o = run(&["verify", "--n", "3", "--max-exp", "6", "--limit", "20", "--samples", "10", "--inject-fault", "craig-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["passed"], json!(false));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n", "3", "--max-exp", "5", "--limit", "16", "--samples", "20", "--seed", "7"];
    assert_eq!(ok(&args), ok(&args));
    assert_eq!(ok(&["specht", "--n", "4"]), ok(&["specht", "--n", "4"]));
}
