use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn conifold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conifold"))
        .args(args)
        .env_remove("CONIFOLD_SAMPLES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["-o", p]);
    let out = conifold(&all);
    let json = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    (out.status.code().unwrap(), json)
}

fn without_timing(mut v: Value) -> Value {
    for s in v["suites"].as_array_mut().unwrap() {
        s["elapsed_ms"] = Value::from(0);
    }
    v
}

#[test]
fn verify_all_on_defaults_passes() {
    let (code, json) = report(&["verify", "all", "--samples", "1000", "--seed", "7"]);
    assert_eq!(code, 0, "{json:#}");
    assert_eq!(json["schema"], 1);
    assert_eq!(json["success"], true);
    let suites: Vec<&str> = json["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    for name in ["novikov", "gluing", "diagram", "symbolic", "aside", "images-slices", "locus-curves"] {
        assert!(suites.contains(&name), "missing {name} in {suites:?}");
    }
}

#[test]
fn verify_symbolic_lists_cells_per_chart() {
    let (code, json) = report(&["verify", "symbolic"]);
    assert_eq!(code, 0);
    let suites = json["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 3);
    for (k, s) in suites.iter().enumerate() {
        assert_eq!(s["chart"], k + 1);
        assert!(s["samples_or_cells"].as_u64().unwrap() > 0);
        assert_eq!(s["failed"], 0);
    }
}

#[test]
fn verify_diagram_in_float_mode_with_exp_model() {
    let out = conifold(&["verify", "diagram", "--mode", "float", "--psi-model", "exp", "--samples", "300"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS diagram chart")).count(), 3);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "images", "--samples", "50", "--seed", "11"];
    let (_, a) = report(&args);
    let (_, b) = report(&args);
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn config_errors_exit_with_two() {
    assert_eq!(conifold(&["--w1", "0", "verify"]).status.code(), Some(2));
    assert_eq!(conifold(&["--delta", "1/2", "verify"]).status.code(), Some(2));
    assert_eq!(conifold(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(conifold(&["verify", "--psi-model", "exp"]).status.code(), Some(2));
    assert_eq!(conifold(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(conifold(&["emit", "broken-line"]).status.code(), Some(2));
    assert_eq!(conifold(&["emit", "fiber"]).status.code(), Some(2));
}

#[test]
fn environment_overrides_flags_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_conifold"))
        .args(["verify", "novikov"])
        .env("CONIFOLD_SAMPLES", "25")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("/75 passed"), "{}", stdout(&out));
}

#[test]
fn classify_examples() {
    let verdict = |p: &[&str]| {
        let mut args = vec!["classify", "--"];
        args.extend(p);
        stdout(&conifold(&args)).trim().to_string()
    };
    assert_eq!(verdict(&["-3", "1", "2", "0", "-1"]), "singular");
    assert_eq!(verdict(&["-2", "0.5", "1", "2", "3"]), "smooth");
    assert_eq!(verdict(&["0", "0", "0", "0", "0"]), "not-in-image");
    assert_eq!(verdict(&["-2", "1", "1", "3", "0"]), "singular");
}

#[test]
fn emit_broken_line_has_three_segments_and_corners() {
    let out = conifold(&["emit", "broken-line", "--q1", "0", "--q2", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["segments"].as_array().unwrap().len(), 3);
    assert_eq!(v["corner_a"], serde_json::json!([-2.0, 1.0, 1.0]));
    assert_eq!(v["corner_a_prime"], serde_json::json!([-2.0, 1.0, 2.0]));

    let csv = stdout(&conifold(&["emit", "broken-line", "--q1", "0", "--q2", "0"]));
    assert!(csv.starts_with("kind,label,t,u1,u2,v"));
    assert!(csv.contains("corner,A,1.0,-2.0,1.0,1.0"));
    assert!(csv.contains("corner,A',2.0,-2.0,1.0,2.0"));
}

#[test]
fn emit_locus_lists_both_lines_with_j_images() {
    let csv = stdout(&conifold(&["emit", "locus", "--n", "7"]));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().filter(|r| r.starts_with("Delta1,")).all(|r| r.contains(",0.0,") && r.ends_with(",1.0,2.0")));
    assert!(rows.iter().filter(|r| r.starts_with("Delta2,")).all(|r| r.ends_with(",1.0,1.0")));
}

#[test]
fn emit_fiber_rows_have_small_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fiber.csv");
    let out = conifold(&["emit", "fiber", "--q", "0,0,0", "--n", "100", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "residual").unwrap();
    let residuals: Vec<f64> = reader.records().map(|r| r.unwrap()[col].parse().unwrap()).collect();
    assert_eq!(residuals.len(), 100);
    assert!(residuals.iter().all(|&r| r <= 1e-9));
}

#[test]
fn emit_f_image_rows_lie_on_the_slice() {
    let csv = stdout(&conifold(&["emit", "f-image", "--q1", "1", "--q2", "-1", "--n", "40"]));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 40);
    assert!(rows.iter().all(|r| !r.ends_with(",none")));
}
