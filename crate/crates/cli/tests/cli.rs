use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

fn run(args: &[&str], file: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latfree"))
        .arg(args[0])
        .arg(data(file))
        .args(&args[1..])
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn certify_split() {
    let out = run(&["certify"], "split.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["maximal"], json!(true));
    assert_eq!(v["certificate"]["m"], json!(2));
    assert_eq!(v["certificate"]["r"], json!(1));
    assert_eq!(v["certificate"]["rec_basis"], json!([[0, 1]]));
    assert!(stderr(&out).starts_with("PASS certify"));
}

#[test]
fn certify_refutation_still_exits_zero() {
    let out = run(&["certify"], "unit_square.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["maximal"], json!(false));
    assert_eq!(v["refutation"]["kind"], json!("not-maximal"));
    assert!(stderr(&out).starts_with("FAIL certify"));
}

#[test]
fn parity_example() {
    let out = run(&["parity"], "parity5.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), json!({"i": 1, "j": 5, "mid": [1, 0]}));
    let out = run(&["parity"], "parity4.json");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn minkowski_example() {
    let out = run(&["minkowski", "--t", "1"], "centered_square.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), json!({"z": [1, 0]}));
    let out = run(&["minkowski", "--t", "1"], "unit_square.json");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not centrally symmetric"));
}

#[test]
fn check_free_and_witness() {
    let out = run(&["check-free"], "unit_square.json");
    assert_eq!(json_of(&out), json!({"lattice_free": true}));
    let out = run(&["check-free"], "triangle3.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["lattice_free"], json!(false));
    assert_eq!(v["witness"]["z"], json!([1, 1]));
    assert_eq!(v["witness"]["location"], json!("interior"));
}

#[test]
fn undecided_exits_two() {
    let out = run(&["check-free", "--cap", "1"], "slab_sqrt2.json");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("UNDECIDED"));
}

#[test]
fn malformed_input_exits_one_with_field() {
    let out = run(&["volume"], "malformed.json");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("ineqs[0].a[1]"));
    let out = Command::new(env!("CARGO_BIN_EXE_latfree")).args(["volume", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hyperplanes() {
    let out = run(&["certify-hyperplane"], "hyperplane_irrational.json");
    assert_eq!(json_of(&out)["maximal"], json!(true));
    let out = run(&["certify-hyperplane"], "hyperplane_rational.json");
    let v = json_of(&out);
    assert_eq!(v["maximal"], json!(false));
    assert_eq!(v["enlargement"]["ineqs"][0], json!({"a": ["1", "1"], "b": "1"}));
}

#[test]
fn maximalize_and_normalize() {
    let out = run(&["maximalize", "--box", "3"], "small_square.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["certificate"]["r"], json!(1));
    assert_eq!(v["polyhedron"]["ineqs"].as_array().unwrap().len(), 2);

    let out = run(&["normalize"], "split.json");
    let v = json_of(&out);
    assert_eq!(v["r"], json!(1));
    assert_eq!(v["map"]["forward"], json!([[0, 1], [1, 0]]));
}

#[test]
fn approx_line_convergent() {
    let out = run(&["approx-line", "--t", "5"], "line_sqrt2.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["z"], json!([5, 7]));
    assert!(stderr(&out).starts_with("PASS"));
}

#[test]
fn volume_and_enumerate() {
    let out = run(&["volume"], "triangle3.json");
    assert_eq!(json_of(&out), json!({"volume": "9/2"}));
    let out = run(&["enumerate"], "triangle2.json");
    assert_eq!(json_of(&out)["count"], json!(6));
    let out = run(&["enumerate"], "split.json");
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["enumerate", "--window", "2"], "split.json");
    assert_eq!(json_of(&out)["count"], json!(10));
}

#[test]
fn lemma_checks() {
    let out = run(&["lemma1", "--window", "10"], "strip.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["interior_points"], json!([]));
    assert_eq!(v["identity_mismatches"], json!([]));
    assert!(stderr(&out).starts_with("PASS lemma1"));

    let out = run(&["lemma2", "--window", "3"], "slab_sqrt2.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["interior_points_of_sum"].as_array().unwrap().len(), 49);
    assert!(stderr(&out).starts_with("FAIL lemma2"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["certify"], "triangle2.json");
    let b = run(&["certify"], "triangle2.json");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("latfree-out-{}.json", std::process::id()));
    let out = run(&["volume", "--out", path.to_str().unwrap()], "unit_square.json");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json!({"volume": "1"}));
    std::fs::remove_file(path).ok();
}

fn count_class(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

#[test]
fn plot_marks() {
    let out = run(&["plot", "--window", "-2,3,-2,3"], "unit_square.json");
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(count_class(&svg, "witness"), 4);
    assert_eq!(count_class(&svg, "interior"), 0);
    assert_eq!(count_class(&svg, "polyhedron"), 1);
    assert_eq!(count_class(&svg, "lattice"), 36 - 4);

    let out = run(&["plot", "--window", "-1,4,-1,4"], "triangle3.json");
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(count_class(&svg, "interior"), 1);
    assert!(svg.contains("<title>(1, 1)</title>"));

    let out = run(&["plot", "--window", "-2,3,-2,2"], "split.json");
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(count_class(&svg, "polyhedron"), 1);
    assert_eq!(count_class(&svg, "witness"), 10);

    let out = run(&["plot"], "cube3.json");
    assert_eq!(out.status.code(), Some(1));
}
