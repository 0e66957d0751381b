use std::path::Path;
use std::process::{Command, Output};

use halphen_cli::{read_csv, write_csv, CSV_HEADER};

fn halphen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halphen"))
        .args(args)
        .env_remove("HALPHEN_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn csv_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let o = halphen(&["figure2", "--kmax", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(format!("{CSV_HEADER}\n").as_bytes()));
    let rows = read_csv(bytes.as_slice()).unwrap();
    assert_eq!(rows.len(), 6);
    let mut again = Vec::new();
    write_csv(&rows, &mut again).unwrap();
    assert_eq!(again, bytes);
}

#[test]
fn runs_are_deterministic_and_sorted() {
    let a = halphen(&["figure1", "--n", "1000,250", "--kmax", "12"]);
    let b = halphen(&["figure1", "--n", "1000,250", "--kmax", "12"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let rows = read_csv(a.stdout.as_slice()).unwrap();
    let keys: Vec<(f64, usize)> = rows.iter().map(|r| (r.n_value(), r.k.unwrap_or(usize::MAX))).collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]), "{keys:?}");
    assert_eq!(rows[0].n, "250");
    assert_eq!(rows[0].computed_error, "5e-1");
}

#[test]
fn json_output() {
    let o = halphen(&["table1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0]["experiment"], "table1");
    assert_eq!(rows[2]["k"], 16);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["figure2", "--grid-size", "100"][..],
        &["table1", "--precision-bits", "24"],
        &["table1", "--format", "xml"],
        &["solve", "--n", "10", "--k", "2"],
        &["solve", "--poly", "--rational", "--n", "10", "--k", "2"],
        &["frobnicate"],
        &["figure1", "--n", "-3"],
    ] {
        let o = halphen(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_halphen"))
        .args(["table1"])
        .env("HALPHEN_PRECISION_BITS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn failed_check_exits_1() {
    // a loose tolerance gives degrees far below the reference ones
    let o = halphen(&["table1", "--tol", "1e-3"]);
    assert_eq!(code(&o), 1);
    let rows = read_csv(o.stdout.as_slice()).unwrap();
    assert!(rows.iter().any(|r| r.status == "fail"));
}

#[test]
fn solver_failure_exits_3() {
    // 257 samples cannot support a type-(200, 200) fit
    let o = halphen(&["solve", "--rational", "--n", "10", "--k", "200", "--grid-size", "257"]);
    assert_eq!(code(&o), 3);
    let rows = read_csv(o.stdout.as_slice()).unwrap();
    assert!(rows[0].status.starts_with("error"));
}

#[test]
fn solve_and_precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_halphen"))
        .args(["solve", "--rational", "--n", "1000", "--k", "3"])
        .env("HALPHEN_PRECISION_BITS", "106")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(o.stdout.as_slice()).unwrap();
    // double-double results carry more than 17 significant digits
    assert!(rows[0].computed_error.len() > 25, "{}", rows[0].computed_error);
    let e = rows[0].computed().unwrap();
    assert!((e - 7.9394e-4).abs() < 1e-7, "{e}");

    let o = halphen(&["solve", "--poly", "--n", "2", "--k", "1"]);
    assert_eq!(code(&o), 0);
    let rows = read_csv(o.stdout.as_slice()).unwrap();
    assert!((rows[0].computed().unwrap() - 0.125).abs() < 1e-12);
}

#[test]
fn plot_is_written_next_to_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let o = halphen(&["figure1", "--n", "250", "--kmax", "20", "--plot", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(out.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 21 + 1);
    assert!(svg.contains("<polyline"));
    assert!(!Path::new("figure1.svg").exists());
}
