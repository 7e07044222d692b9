//! End-to-end runs of the `zpk` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn zpk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zpk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = zpk(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn compute_prints_exact_fraction() {
    let o = zpk(&["compute", "--ring", "Z3", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zp_4(Z3) = 65/81"));
}

#[test]
fn compute_json_record_shape() {
    let v = json(&["compute", "--ring", "Z2 x Z3", "--k", "2", "--bruteforce-cap", "1000"]);
    let r = &v[0];
    assert_eq!(r["ring"], "Z2 x Z3");
    assert_eq!(r["k"], 2);
    assert_eq!(r["value"], "5/12");
    assert!(r["decimal"].as_str().unwrap().starts_with("0.41666"));
    assert!(r["bounds"].is_array());
    assert!(r["flags"].is_object());
}

#[test]
fn bounds_report_attainment() {
    let v = json(&["bounds", "--ring", "Z4", "--k", "3"]);
    let bounds = v[0]["bounds"].as_array().unwrap();
    let t1 = bounds.iter().find(|b| b["id"] == "t1.upper").unwrap();
    assert_eq!(t1["holds"], true);
    assert_eq!(t1["attained"], true);
}

#[test]
fn csv_has_header_and_rows() {
    let o = zpk(&["compute", "--ring", "Z3", "--k", "2..3", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("ring,k,zp"));
    assert!(lines[2].starts_with("Z3,3,19/27"));
}

#[test]
fn catalog_sweeps_pass() {
    for args in
        [&["verify", "--k", "2..4", "--max-order", "32"][..], &["classify", "--k", "2..8"], &["table"]]
    {
        let o = zpk(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| zpk(args).status.code();
    assert_eq!(code(&["compute", "--ring", "Z4 x", "--k", "2"]), Some(2));
    assert_eq!(code(&["compute", "--ring", "Ideal(Z4,[3])", "--k", "2"]), Some(2));
    assert_eq!(code(&["compute", "--ring", "Z7", "--k", "1"]), Some(2));
    assert_eq!(code(&["compute", "--ring", "Z5000", "--k", "2"]), Some(3));
    assert_eq!(code(&["compute", "--k", "2"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
}

#[test]
fn manifest_catalog_is_used() {
    let dir = std::env::temp_dir().join(format!("zpk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mini.txt");
    std::fs::write(&path, "# two rings\nZ2 = Z2 ; local=true ; zsq=true\nZ4 = Z4 ; local=true\n").unwrap();
    let v = json(&["catalog", "--catalog", path.to_str().unwrap()]);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["Z2", "Z4"]);
    std::fs::remove_dir_all(&dir).ok();
}
