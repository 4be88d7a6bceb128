use std::fs;
use std::process::{Command, Output};

fn lemnichor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lemnichor"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn sample_writes_twelve_rows_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let out = lemnichor(&["sample", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert!(lines[0].starts_with("t,x1,y1,vx1,vy1"));
    assert!(!text.contains('\r'));
}

#[test]
fn sample_output_is_reproducible() {
    let a = lemnichor(&["sample", "--n-samples", "30"]);
    let b = lemnichor(&["sample", "--n-samples", "30"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reports_pass() {
    let out = lemnichor(&["verify", "--n-samples", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["pass"], true);
}

#[test]
fn impossible_tolerance_fails_verification() {
    let out = lemnichor(&["verify", "--n-samples", "50", "--tolerance-scale", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn integrate_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let out = lemnichor(&[
        "integrate",
        "--steps",
        "4096",
        "--dt",
        "0.0018",
        "--stride",
        "64",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.code().is_some_and(|c| c <= 1));
    let rows = fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(rows, 1 + 4096 / 64 + 1);
    let meta = fs::read_to_string(dir.path().join("run.csv.meta.json")).unwrap();
    let meta: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert!(meta["return_error"].is_number());
}

#[test]
fn geometry_from_concurrency_point() {
    let out = lemnichor(&[
        "geometry",
        "--from-c",
        "1.4021147692999558,0.98281525542141845",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.matches(",true").count(), 3);
}

#[test]
fn point_inside_a_lobe_has_no_triple() {
    let out = lemnichor(&["geometry", "--from-c", "0.1,0.2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(
        lemnichor(&["sample", "--n-samples", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lemnichor(&["geometry", "--from-c", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(lemnichor(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_init_file_is_an_io_error() {
    let out = lemnichor(&[
        "integrate",
        "--init",
        "file",
        "--init-path",
        "/nonexistent/init.json",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
