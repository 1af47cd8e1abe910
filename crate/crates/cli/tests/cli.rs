use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn isodense(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isodense"))
        .args(args)
        .env_remove("ISODENSE_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = isodense(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let head = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (head, rows)
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing {key} in {v}"))
}

#[test]
fn solve_interval_below_and_above_critical_offset() {
    let v = json(&["solve", "--dim", "1", "--p", "2", "--a", "0.25", "--mass", "1"]);
    assert_eq!(v["branch"], "Asymmetric");
    assert!((f(&v, "perimeter") - 2.08008).abs() < 1e-5);
    assert!((f(&v, "alpha") + 0.20149).abs() < 1e-5);
    assert!((f(&v, "beta") - 1.24076).abs() < 1e-5);

    let v = json(&["solve", "--p", "2", "--a", "1"]);
    assert_eq!(v["branch"], "Symmetric");
    assert!((f(&v, "perimeter") - 2.43472).abs() < 1e-5);
}

#[test]
fn solve_disc_is_centred_above_critical_offset() {
    let v = json(&["solve", "--dim", "2", "--p", "2", "--a", "1"]);
    assert_eq!(v["branch"], "Centred");
    assert!((f(&v, "R") - 0.52849).abs() < 1e-5);
    assert_eq!(f(&v, "r0"), 0.0);
}

#[test]
fn solve_forced_numeric_matches_exact() {
    let exact = json(&["solve", "--p", "3", "--a", "0.2"]);
    let forced = json(&["solve", "--p", "3", "--a", "0.2", "--force-numeric"]);
    assert!((f(&exact, "perimeter") - f(&forced, "perimeter")).abs() < 1e-8);
}

#[test]
fn bad_parameters_are_usage_errors() {
    assert_eq!(isodense(&["solve", "--p", "-1", "--a", "0"]).status.code(), Some(1));
    assert_eq!(isodense(&["solve", "--p", "2", "--a", "-0.5"]).status.code(), Some(1));
    assert_eq!(isodense(&["solve", "--dim", "4", "--p", "2", "--a", "0"]).status.code(), Some(1));
    assert_eq!(isodense(&["solve", "--p", "2", "--a", "0", "--mass", "0"]).status.code(), Some(1));
    assert_eq!(isodense(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(isodense(&["verify", "nope"]).status.code(), Some(1));
    assert_eq!(
        isodense(&["sweep", "--p", "2", "--a-min", "1", "--a-max", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(isodense(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.json");
    let out = isodense(&["solve", "--p", "2", "--a", "0.25", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("s.json");
    let args = ["solve", "--dim", "3", "--p", "2", "--a", "0.3"];
    let stdout = isodense(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", target.to_str().unwrap()]);
    let out = isodense(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), stdout);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["solve", "--dim", "2", "--p", "2", "--a", "0.3"][..],
        &["sweep", "--dim", "1", "--p", "1.5", "--a-min", "0", "--a-max", "2", "--steps", "17"][..],
        &["contour", "--p", "2", "--a", "0.25", "--grid", "9"][..],
        &["evolve", "--dim", "2", "--p", "2", "--a", "0.2", "--vertices", "128"][..],
    ] {
        let first = isodense(args);
        let second = isodense(args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn numbers_carry_twelve_significant_digits() {
    let out = isodense(&["solve", "--p", "2", "--a", "0.25"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"perimeter\": 2.08008382305"), "{text}");
}

#[test]
fn sweep_is_sorted_and_independent_of_thread_count() {
    let args = ["sweep", "--dim", "2", "--p", "2", "--a-min", "0", "--a-max", "1", "--steps", "11"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_isodense"))
            .args(args)
            .env("ISODENSE_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let many = run("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run("zero").status.code(), Some(1));

    let (head, rows) = csv(std::str::from_utf8(&one.stdout).unwrap());
    assert_eq!(head, ["a", "branch", "R", "r0", "perimeter", "mass_residual"]);
    assert_eq!(rows.len(), 11);
    let a: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(a.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(a[0], 0.0);
    assert_eq!(a[10], 1.0);
}

#[test]
fn sweep_p1_slope_approaches_two() {
    let out = isodense(&["sweep", "--p", "1", "--a-min", "49.9", "--a-max", "50.1", "--steps", "3"]);
    let (_, rows) = csv(std::str::from_utf8(&out.stdout).unwrap());
    let p: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    let slope = (p[2] - p[0]) / 0.2;
    assert!((1.99..=2.0).contains(&slope), "{slope}");
}

#[test]
fn sweep_3d_is_flat_below_critical_offset() {
    let out = isodense(&["sweep", "--dim", "3", "--p", "2", "--a-min", "0", "--a-max", "0.45", "--steps", "10"]);
    let (_, rows) = csv(std::str::from_utf8(&out.stdout).unwrap());
    for r in &rows {
        assert_eq!(r[1], "OffCentre");
        let s: f64 = r[4].parse().unwrap();
        assert!((s - 5.48622).abs() < 1e-5, "{s}");
    }
}

#[test]
fn contour_grid_shape_and_circle_identity() {
    let out = isodense(&["contour", "--p", "2", "--a", "0.5", "--grid", "2"]);
    let (head, rows) = csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(head.len(), 6);
    assert_eq!(rows.len(), 4);

    // for p = 1 the perimeter level sets are circles about (-a, -a)
    let a = 0.3;
    let out = isodense(&["contour", "--p", "1", "--a", "0.3", "--grid", "7"]);
    let (_, rows) = csv(std::str::from_utf8(&out.stdout).unwrap());
    for r in &rows {
        let x: f64 = r[0].parse().unwrap();
        let y: f64 = r[1].parse().unwrap();
        let p: f64 = r[2].parse().unwrap();
        let m: f64 = r[3].parse().unwrap();
        assert!((p - (x + y + 2.0 * a)).abs() < 1e-10);
        assert!(((x + a).powi(2) + (y + a).powi(2) - 2.0 * (m + a * a)).abs() < 1e-9);
    }
}

#[test]
fn evolve_writes_curve_and_reports_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.csv");
    let c = curve.to_str().unwrap();
    let v = json(&["evolve", "--dim", "2", "--p", "2", "--a", "0.2", "--vertices", "256", "--out", c]);
    assert_eq!(v["converged"], true);
    assert!((f(&v, "isoperimetric_quotient") - 1.0).abs() < 1e-3);
    let exact = json(&["solve", "--dim", "2", "--p", "2", "--a", "0.2"]);
    assert!((f(&v, "weighted_perimeter") / f(&exact, "perimeter") - 1.0).abs() < 5e-3);

    let text = std::fs::read_to_string(Path::new(&curve)).unwrap();
    let (head, rows) = csv(&text);
    assert_eq!(head, ["vertex_index", "x", "y"]);
    assert_eq!(rows.len(), 256);

    let v = json(&["evolve", "--dim", "2", "--p", "4", "--a", "0.1", "--vertices", "256"]);
    assert!(f(&v, "isoperimetric_quotient") > 1.001);
}

#[test]
fn evolve_that_runs_out_of_iterations_exits_numeric() {
    let out = isodense(&["evolve", "--p", "4", "--a", "0.1", "--vertices", "128", "--iters", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn acrit_reports_threshold() {
    let v = json(&["acrit", "--dim", "1", "--p", "2"]);
    assert!((f(&v, "a_crit") - 3f64.powf(2.0 / 3.0) / 4.0).abs() < 1e-11);
    assert!((f(&v, "interval_threshold") - f(&v, "a_crit")).abs() < 1e-11);
    let v = json(&["acrit", "--dim", "2", "--p", "2"]);
    assert!((f(&v, "a_crit") - (2.0 / (3.0 * std::f64::consts::PI)).sqrt()).abs() < 1e-11);
    assert_eq!(isodense(&["acrit", "--dim", "2", "--p", "1"]).status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    for suite in ["branch-continuity", "reduction", "radial-quadrature", "oracle1d"] {
        let out = isodense(&["verify", suite]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(out.status.success(), "{suite}:\n{text}");
        assert!(text.lines().any(|l| l.starts_with("PASS")));
        assert!(!text.contains("FAIL"));
    }
}
