use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn spec_file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_catalogue_symbols() {
    assert_eq!(stdout_json(&run(&["classify", "EIHT"]))["type"], "hyperbolic");
    let v = stdout_json(&run(&["classify", "ELFSQE"]));
    assert_eq!(v["type"], "dilation");
    assert!((v["omega"]["re"].as_f64().unwrap() - 0.5).abs() < 1e-10);
}

#[test]
fn classify_mobius_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec_file(
        &dir,
        "half.json",
        r#"{"kind": "mobius", "mobius": {"a": 0.5, "b": 0, "c": 0, "d": 1}}"#,
    );
    let v = stdout_json(&run(&["classify", &p]));
    assert_eq!(v["type"], "dilation");
    assert_eq!(v["omega"]["re"].as_f64().unwrap(), 0.0);
    assert!((v["derivative"]["re"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn spectrum_of_parabolic_example_is_a_spiral() {
    let v = stdout_json(&run(&["spectrum", "EIPC", "--json"]));
    let rate = &v["spectrum"]["spiral"]["rate"];
    assert!((rate["re"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert!((rate["im"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert_eq!(v["classification"]["type"], "parabolic_nonauto");
}

#[test]
fn weighted_hyperbolic_spectrum_is_the_unit_disc() {
    let v = stdout_json(&run(&["spectrum", "EIHT", "--weight", "W-EIHT", "--json"]));
    assert!((v["spectrum"]["disc_radius"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["spectrum"], v["essential"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let identity = spec_file(
        &dir,
        "id.json",
        r#"{"kind": "mobius", "mobius": {"a": 1, "b": 0, "c": 0, "d": 1}}"#,
    );
    assert_eq!(run(&["spectrum", &identity]).status.code(), Some(4));

    let bad = spec_file(&dir, "bad.json", r#"{"kind": "mobius", "mobius": {"a": 1}}"#);
    assert_eq!(run(&["classify", &bad]).status.code(), Some(2));
    assert_eq!(run(&["classify", "NOT-A-SYMBOL"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "EIHT", "--grid", "12by12"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "no-such-case"]).status.code(), Some(2));
}

#[test]
fn reproduce_passing_cases() {
    for case in ["ELFSQE-weighted", "schwarzian-EIPC", "adjoint-battery", "koenigs"] {
        let out = run(&["reproduce", case]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{case}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn reproduce_json_report() {
    let v = stdout_json(&run(&["reproduce", "ELFSQE-weighted", "--json"]));
    let r = &v[0];
    assert_eq!(r["case_id"], "ELFSQE-weighted");
    assert_ne!(r["verdict"], "fail");
    let pts = r["model"]["spectrum"]["extra_points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "point count" && c["grade"] == "pass"));
}

#[test]
fn failing_case_exits_one() {
    let out = run(&["reproduce", "blaschke"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("fail"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["matrix-dump", "EIPC", "--n", "16"]);
    let b = run(&["matrix-dump", "EIPC", "--n", "16"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["spectrum", "ELFSQE", "--weight", "W-ELFSQE", "--json"]);
    let b = run(&["spectrum", "ELFSQE", "--weight", "W-ELFSQE", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn matrix_dump_layout() {
    let out = run(&["matrix-dump", "ELFSQE", "--n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j,k,re,im");
    assert_eq!(lines.len(), 17);
    // column 0 is the constant function 1
    assert_eq!(lines[1], "0,0,1e0,0e0");
}

#[test]
fn emitted_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&["spectrum", "ELFSQE", "--n", "32", "--grid", "20x20", "--emit", d]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["model.json", "pseudospectra.csv", "plot.svg", "eigenvalues.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let csv = fs::read_to_string(dir.path().join("pseudospectra.csv")).unwrap();
    assert_eq!(csv.lines().count(), 401);

    let mdir = tempfile::tempdir().unwrap();
    let out = run(&[
        "matrix-dump",
        "EIHT",
        "--n",
        "8",
        "--emit",
        mdir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let names: Vec<String> = fs::read_dir(mdir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().any(|n| n.ends_with(".csv")) && names.iter().any(|n| n.ends_with(".json")));
}
