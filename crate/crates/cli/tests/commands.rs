//! The binary's output and exit codes for the documented invocations.

use std::process::Command;

use ordqe::eval::{eval_qf, parse_assignment};
use ordqe::syntax::{parse_formula, Theory};
use serde_json::Value;

fn ordqe(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ordqe")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn first_line(args: &[&str]) -> (i32, String) {
    let (code, out, _) = ordqe(args);
    (code, out.lines().next().unwrap_or("").to_string())
}

#[test]
fn decide() {
    assert_eq!(first_line(&["decide", "--theory", "mul-r", "forall x. exists y. x = y*y*y"]), (0, "true".into()));
    assert_eq!(first_line(&["decide", "--theory", "mul-q", "forall x. exists y. x = y*y*y"]), (1, "false".into()));
    assert_eq!(first_line(&["decide", "--theory", "dlo-q", "forall x. exists y. x < y"]), (0, "true".into()));
}

#[test]
fn errors_exit_two_on_stderr() {
    let (code, out, err) = ordqe(&["decide", "--theory", "presburger-z", "exists x. x*x = 1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && !err.is_empty());
    assert_eq!(ordqe(&["decide", "--theory", "nope", "true"]).0, 2);
    assert_eq!(ordqe(&["frobnicate"]).0, 2);
}

#[test]
fn eliminate() {
    assert_eq!(first_line(&["eliminate", "--theory", "dlo-q", "exists x. (y < x /\\ x < z)"]), (0, "y < z".into()));
    assert_eq!(first_line(&["eliminate", "--theory", "presburger-z", "exists x. 2*x = y"]), (0, "y == 0 mod 2".into()));
    assert_eq!(first_line(&["eliminate", "--theory", "mul-r", "exists y. (y != 0 /\\ x = y*y)"]), (0, "0 < x".into()));
}

#[test]
fn eliminated_json_reparses_to_an_equivalent() {
    let (code, out, _) = ordqe(&["eliminate", "--theory", "presburger-z", "--format", "json", "--trace", "exists x. (2*x = y /\\ 0 < x)"]);
    assert_eq!(code, 0);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["theory"], "presburger-z");
    let g = parse_formula(j["eliminated"].as_str().unwrap(), Theory::PresburgerZ).unwrap();
    for y in -10..=10 {
        let a = parse_assignment(&format!("y={y}")).unwrap();
        assert_eq!(eval_qf(&g, &a).unwrap(), y > 0 && y % 2 == 0, "y = {y}");
    }
    for step in j["trace"].as_array().unwrap() {
        for k in ["rule", "anchor", "before", "after"] {
            assert!(step[k].is_string(), "{step}");
        }
    }
}

#[test]
fn witnesses() {
    let dlo = ["witness", "--theory", "dlo-q", "exists x. (y < x /\\ x < z)", "--assign", "y=0,z=1"];
    assert_eq!(first_line(&dlo), (0, "x = 1/2".into()));
    let crt = ["witness", "--theory", "presburger-z", "exists x. (x == 1 mod 4 /\\ x == 3 mod 6)"];
    let (code, line) = first_line(&crt);
    let x: i64 = line.strip_prefix("x = ").unwrap().parse().unwrap();
    assert_eq!(code, 0);
    assert!(x.rem_euclid(4) == 1 && x.rem_euclid(6) == 3, "{x}");
    let (code, out, _) = ordqe(&["witness", "--theory", "mul-q-pos", "--format", "json", "exists x. ~pow(2, x)"]);
    assert_eq!(code, 0);
    let j: Value = serde_json::from_str(&out).unwrap();
    let v = parse_assignment(&format!("x={}", j["witness"]["x"].as_str().unwrap())).unwrap();
    let square = parse_formula("pow(2, x)", Theory::MulQPos).unwrap();
    assert!(!eval_qf(&square, &v).unwrap());
    let none = ["witness", "--theory", "presburger-z", "exists x. (x == 1 mod 4 /\\ x == 2 mod 6)"];
    assert_eq!(first_line(&none), (1, "unsatisfiable".into()));
}

#[test]
fn selftest_passes() {
    let (code, out, _) = ordqe(&["selftest", "--json", "--instances", "40"]);
    assert_eq!(code, 0, "{out}");
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["passed"], true);
    assert_eq!(j["suites"].as_array().unwrap().len(), ordqe::selftest::SUITES.len());
}
