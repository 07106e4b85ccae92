use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypertree"))
        .args(args)
        .output()
        .expect("binary runs");
    let json: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(json["schema"], "hypertree-cli/1");
    (out.status.code().unwrap(), json)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const H7: &str = r#"{"n": 7, "edges": [[1,2,7],[3,4,7],[5,6,7],[1,3,5],[2,4,6]]}"#;

#[test]
fn check_reports_flags() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h7.json", H7);
    let (code, j) = run(&["check", &f]);
    assert_eq!(code, 0);
    assert_eq!(j["status"], "ok");
    assert_eq!(j["payload"]["validation"]["irreducible"], true);
    assert_eq!(j["payload"]["automorphism_order"], 12);
    assert_eq!(j["payload"]["valences"][6], 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, j) = run(&["check", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!((code, j["status"].as_str()), (2, Some("error")));
    assert_eq!(j["payload"]["kind"], "input");

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n": 4, "edges": [[1,2,3],[1,2,4]]}"#,
    );
    let (code, _) = run(&["class", &bad]);
    assert_eq!(code, 3);

    let f = write(dir.path(), "h7.json", H7);
    let (code, j) = run(&["--budget", "2", "equation", &f]);
    assert_eq!(code, 4);
    assert!(!j["diagnostics"].as_array().unwrap().is_empty());

    let (code, _) = run(&["enumerate", "--n", "40"]);
    assert_eq!(code, 4);
}

#[test]
fn budget_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h7.json", H7);
    let out = Command::new(env!("CARGO_BIN_EXE_hypertree"))
        .args(["equation", &f])
        .env("HYPERTREE_BUDGET_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn enumerate_writes_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let (code, j) = run(&[
        "--threads",
        "2",
        "enumerate",
        "--n",
        "8",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["count"], 3);
    let index: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("n8/index.json")).unwrap())
            .unwrap();
    assert_eq!(index["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn sphere_assemble_compare() {
    let dir = tempfile::tempdir().unwrap();
    let (code, j) = run(&["sphere", "--octahedron"]);
    assert_eq!(code, 0);
    let p = &j["payload"];
    assert_eq!(p["validation"]["valid"], true);
    let b = write(dir.path(), "b.json", &p["black"]["hypertree"].to_string());
    let w = write(dir.path(), "w.json", &p["white"]["hypertree"].to_string());
    let t = write(dir.path(), "t.json", &p["triangulation"].to_string());

    let (_, j) = run(&["assemble", &b, &w]);
    assert_eq!(j["payload"]["assembled"], true);
    let (_, j) = run(&["compare", &b, &w]);
    assert_eq!(j["payload"]["verdict"], "equal_spherical");
    assert_eq!(j["payload"]["equations_equal"], true);

    let (_, j) = run(&["sphere", "--quadruple", &t]);
    assert_eq!(j["payload"]["triangulation"]["n"], 18);
    assert_eq!(j["payload"]["black"]["irreducible"], true);
    let (_, j) = run(&["sphere", "--split", &t]);
    assert_eq!(
        j["payload"]["black"]["hypertree"]["edges"][0],
        serde_json::json!([1, 3, 5])
    );
    let (_, j) = run(&["sphere", "--bipyramid", "3"]);
    assert_eq!(j["payload"]["triangulation"]["n"], 8);
}

#[test]
fn equation_class_fib_realize_stability() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h7.json", H7);
    let (_, j) = run(&["equation", &f]);
    assert_eq!(j["payload"]["terms"], 24);
    assert_eq!(j["payload"]["degree"], 4);

    let (_, j) = run(&["class", &f]);
    assert_eq!(j["payload"]["d"], 4);
    assert_eq!(j["payload"]["m"]["7"]["exact"], 2);

    let (code, j) = run(&["fib", &f, "--vertex", "1", "--partner", "4", "--role", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["validation"]["irreducible"], true);
    assert_eq!(j["payload"]["hypertree"]["n"], 8);

    let (code, j) = run(&["realize", &f, "--seed", "1", "--bits", "128"]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["verification"]["passed"], true);
    assert!(j["payload"]["equation_residual"].as_f64().unwrap() < 1e-8);

    let (_, j) = run(&["stability", &f]);
    assert_eq!(j["payload"]["report"]["stable"], true);
    let (_, j) = run(&["stability", &f, "--multidegree", "5,0,0,0,0,0"]);
    assert_eq!(j["payload"]["report"]["stable"], false);
}

#[test]
fn pullback_weierstrass() {
    let (code, j) = run(&["pullback", "--example", "weierstrass", "--emit", "class"]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["class"]["d"], 3);
    assert_eq!(j["payload"]["class"]["m"]["1,2"]["exact"], 1);
    assert_eq!(j["payload"]["class"]["m"]["1,3"]["exact"], 0);
    let (_, j) = run(&["pullback", "--example", "weierstrass", "--emit", "table"]);
    assert_eq!(j["payload"]["table"]["entries"]["1,2,3,4,5,6"], 3);
    let (_, j) = run(&["pullback", "--example", "weierstrass", "--emit", "poly"]);
    assert_eq!(j["payload"]["terms"], 330);
}

#[test]
fn usage_errors_come_from_clap() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypertree"))
        .args(["sphere"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
