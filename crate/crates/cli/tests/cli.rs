use std::process::{Command, Output};

use terai_core::pipeline::reverify_certificate;
use terai_core::Certificate;

fn terai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_terai")).args(args).output().expect("terai binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(terai(&["verify", "--k", "4"]).status.code(), Some(0));
    assert_eq!(terai(&["verify", "--k", "24", "--relaxed"]).status.code(), Some(1));
    assert_eq!(terai(&["verify", "--k", "7"]).status.code(), Some(2));
    assert_eq!(terai(&["verify", "--k", "24"]).status.code(), Some(2));
    assert_eq!(terai(&["verify", "--k", "12", "--d", "5"]).status.code(), Some(2));
    assert_eq!(terai(&["verify", "--k", "12", "--d", "11"]).status.code(), Some(0));
}

#[test]
fn verify_json_reparses_and_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    for k in ["4", "12", "36", "100"] {
        let path = dir.path().join(format!("{k}.json"));
        let out = terai(&["verify", "--k", k, "--json", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let cert = Certificate::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(cert.k.to_string(), k);
        assert!(cert.is_even_only());
        assert_eq!(reverify_certificate(&cert), Ok(()));
    }
}

#[test]
fn range_reports_eligible_rows_only() {
    let empty = terai(&["range", "--from", "5", "--to", "7"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("scanned 3, verified 0, failed 0, skipped (ineligible) 3"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = terai(&["range", "--from", "4", "--to", "12", "--jobs", "2", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,a,b,d,orders,M,exponents,verdict");
    assert_eq!(lines[1], "4,3,1,3,2,2,2,even-only");
    assert!(lines[2].starts_with("12,11,1,11,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn range_usage_errors() {
    assert_eq!(terai(&["range", "--from", "10", "--to", "4"]).status.code(), Some(2));
    assert_eq!(terai(&["conjecture", "--from", "10", "--to", "4"]).status.code(), Some(2));
    assert_eq!(terai(&["range", "--from", "4", "--to", "12", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn conjecture_single_k() {
    let out = terai(&["conjecture", "--from", "4", "--to", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("COUNTEREXAMPLE"));
}

#[test]
fn search_finds_small_solutions() {
    let out = terai(&["search", "--k", "2", "--max-z", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "(1,1,2)"));
    let out = terai(&["search", "--k", "12", "--max-z", "6"]);
    assert_eq!(stdout(&out).trim(), "(11,1,2)");
}

#[test]
fn form_tools() {
    let run = |args: &[&str]| stdout(&terai(args)).trim().to_string();
    assert_eq!(run(&["form", "reduce", "16", "14", "7"]), "7 0 9");
    assert_eq!(run(&["form", "order", "8", "6", "9"]), "4");
    assert_eq!(run(&["form", "classnum", "-252"]), "4");
    assert_eq!(run(&["form", "compose", "16", "14", "7", "16", "14", "7"]), "1 0 63");
    assert_eq!(run(&["form", "power", "8", "6", "9", "4"]), "1 0 63");
    assert_eq!(run(&["form", "reduce", "3", "-2", "5"]), "3 -2 5");
    assert_eq!(terai(&["form", "classnum", "5"]).status.code(), Some(2));
    assert_eq!(terai(&["form", "reduce", "2", "2", "2"]).status.code(), Some(2));
}
