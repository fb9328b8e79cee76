use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use abh_cli::io::{read_field_csv, read_means_csv};
use serde_json::Value;

fn abh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abh")).args(args).env_remove("ABH_QUAD_NODES").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const TRIG: &str = r#"{"type":"fourier","coeffs":[
    {"m":0,"re":0.3,"im":0.0},{"m":1,"re":1.0,"im":-0.5},
    {"m":-2,"re":0.25,"im":0.75},{"m":3,"re":-0.4,"im":0.1}]}"#;

#[test]
fn kernel_at_half_for_zero_parameters_is_three() {
    let o = abh(&["kernel", "--alpha", "0,0", "--beta", "0,0", "--z", "0.5,0"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!(v["value"]["im"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn kernel_derivative_is_reported() {
    let o = abh(&["kernel", "--alpha", "1", "--beta", "0.5", "--z", "0.3,1.0", "--deriv", "1,1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["derivative"]["value"]["re"].is_f64());
    assert_eq!(v["derivative"]["k"], 1);
}

#[test]
fn constant_boundary_extends_to_c_times_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "one.json", r#"{"type":"constant","value":[1.0,0.0]}"#);
    let out = dir.path().join("field.csv");
    let o = abh(&[
        "extend", "--alpha", "0", "--beta", "0", "--boundary", &b, "--grid", "0.1:0.9:5,8", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_field_csv(fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(rows.len(), 40);
    // alpha = beta = 0 is the harmonic case: the constant extends to itself.
    for row in rows {
        assert!((row.value.re - 1.0).abs() < 1e-10 && row.value.im.abs() < 1e-10, "{row:?}");
    }
}

#[test]
fn coefficients_reproduce_the_quadrature_field() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "f.json", TRIG);
    let c = dir.path().join("c.json");
    let quad = dir.path().join("quad.csv");
    let ser = dir.path().join("series.csv");
    let params = ["--alpha", "0.7,0.2", "--beta", "1.5,-0.1"];
    let o = abh(&[&["coeffs"], &params[..], &["--boundary", &b, "--out", c.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let grid = ["--grid", "0.0:0.9:4,16"];
    let o = abh(&[&["extend"], &params[..], &["--boundary", &b], &grid[..], &["--out", quad.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
    let o = abh(&[&["extend", "--coeffs", c.to_str().unwrap()], &grid[..], &["--out", ser.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let a = read_field_csv(fs::File::open(&quad).unwrap()).unwrap();
    let s = read_field_csv(fs::File::open(&ser).unwrap()).unwrap();
    assert_eq!(a.len(), s.len());
    for (x, y) in a.iter().zip(&s) {
        assert_eq!((x.r, x.theta), (y.r, y.theta));
        assert!((x.value - y.value).norm() < 1e-6, "{x:?} vs {y:?}");
    }
}

#[test]
fn extend_rejects_parameters_that_disagree_with_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "f.json", TRIG);
    let c = dir.path().join("c.json");
    let o = abh(&["coeffs", "--alpha", "1", "--beta", "1", "--boundary", &b, "--out", c.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = abh(&["extend", "--alpha", "2", "--beta", "1", "--coeffs", c.to_str().unwrap(), "--grid", "0:0.5:2,4"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn means_csv_respects_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "f.json", TRIG);
    for p in ["1", "2", "inf"] {
        let o = abh(&["means", "--alpha", "0.5", "--beta", "2", "--boundary", &b, "--p", p, "--radii", "0.3,0.6,0.9"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let rows = read_means_csv(&o.stdout[..]).unwrap();
        assert_eq!(rows.len(), 3);
        for row in rows {
            assert!(row.mp <= row.bound && row.margin >= 0.0, "p={p}: {row:?}");
        }
    }
}

#[test]
fn bounds_json_has_the_documented_keys() {
    for th in ["31", "32", "33", "44", "45"] {
        let o = abh(&["bounds", "--theorem", th, "--alpha", "1", "--beta", "2", "--p", "2", "--r", "0.5", "--k", "1", "--l", "1"]);
        assert_eq!(code(&o), 0, "{th}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v["lhs_spec"].is_string());
        assert!(v["rhs_value"].as_f64().unwrap() > 0.0);
        assert!(v["components"].is_object());
    }
}

#[test]
fn exit_codes() {
    // bad radius
    assert_eq!(code(&abh(&["kernel", "--alpha", "0", "--beta", "0", "--z", "1.5,0"])), 1);
    // unknown subcommand / missing flag
    assert_eq!(code(&abh(&["frobnicate"])), 1);
    assert_eq!(code(&abh(&["kernel", "--alpha", "0"])), 1);
    // gradient bound is not defined for p = 1
    assert_eq!(code(&abh(&["bounds", "--theorem", "32", "--alpha", "1", "--beta", "1", "--p", "1", "--r", "0.5"])), 1);
    assert_eq!(code(&abh(&["bounds", "--theorem", "99", "--alpha", "1", "--beta", "1"])), 1);
    assert_eq!(code(&abh(&["--help"])), 0);

    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "f.json", TRIG);
    let o = Command::new(env!("CARGO_BIN_EXE_abh"))
        .args(["means", "--alpha", "1", "--beta", "1", "--boundary", &b, "--p", "2", "--radii", "0.5"])
        .env("ABH_QUAD_NODES", "32")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert_eq!(String::from_utf8_lossy(&o.stderr).trim().lines().count(), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_abh"))
        .args(["means", "--alpha", "1", "--beta", "1", "--boundary", &b, "--p", "2", "--radii", "0.5"])
        .env("ABH_QUAD_NODES", "1024")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let bad = write(dir.path(), "bad.json", r#"{"type":"samples","values":[[1.0,0.0],[2.0,0.0],[3.0,0.0]]}"#);
    assert_eq!(code(&abh(&["coeffs", "--alpha", "1", "--beta", "1", "--boundary", &bad])), 1);
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("report.json");
    let o = abh(&["verify", "--suite", "t45", "--seed", "7", "--report", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 0);
    assert!(v["checks"][0]["params"]["alpha"].is_array());
    assert_eq!(code(&abh(&["verify", "--suite", "nope"])), 1);
}
