use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, Option<i32>) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (serde_json::from_slice(&o.stdout).expect("valid JSON"), o.status.code())
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [&["verify", "thm-2.1.1", "--samples", "500"][..], &["props", "triv(Z/4, Z/4/(2))"], &["warfield", "Z/8", "--matrix", "[[2, 4], [6, 0]]"]] {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let (a, b) = (run(&full), run(&full));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0));
    }
}

#[test]
fn report_envelope() {
    let (v, code) = json(&["divides", "Z/8", "2", "6"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["schema"], "ringlab-report/1");
    assert_eq!(v["command"], "divides");
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["witness"], "3");

    let (v, _) = json(&["divides", "Z/12", "2", "3"]);
    assert_eq!(v["result"]["divides"], false);
}

#[test]
fn divisibility_in_the_fraction_field_extension() {
    let (v, code) = json(&["divides", "triv(Zloc(2), Frac)", "(4, [0])", "(0, [1/3])"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"]["witness"], "(0, 1/12)");
}

#[test]
fn error_exit_codes() {
    let o = run(&["props", "Z/1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("0..3") && err.contains("^^^"), "{err}");

    assert_eq!(run(&["pd", "Zloc(2)", "2"]).status.code(), Some(3));
    assert_eq!(run(&["ideals", "Zloc(3)"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["divides", "Z/8", "(1, 2)", "3"]).status.code(), Some(2));
}

#[test]
fn json_errors_carry_kind_and_span() {
    let (v, code) = json(&["props", "Z/8 x"]);
    assert_eq!(code, Some(2));
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["input"], "EXPR");
    assert_eq!(v["error"]["span"]["start"], 5);
}

#[test]
fn human_reports() {
    let out = stdout(&run(&["ideals", "Z/12"]));
    assert!(out.starts_with("6 ideals of Z/12"), "{out}");

    let out = stdout(&run(&["ann", "F2[x]/(x^3)", "x^2"]));
    assert!(out.contains("(0:x^2) = (x)"), "{out}");

    let out = stdout(&run(&["warfield", "Z/8", "--matrix", "[[2, 4], [6, 0]]"]));
    assert!(out.contains("A/(2) + A/(4)"), "{out}");

    let out = stdout(&run(&["pd", "Z/8", "2"]));
    assert!(out.contains("infinite"), "{out}");

    let out = stdout(&run(&["decompose", "Z/12"]));
    assert!(out.contains("Z/3") && out.contains("Z/4"), "{out}");
}

#[test]
fn properties_of_named_rings() {
    let (v, _) = json(&["props", "Z/12"]);
    let flags = &v["result"]["flags"];
    assert_eq!(flags["local"]["value"], false);
    assert_eq!(flags["arithmetical"]["value"], true);

    let (v, _) = json(&["props", "F2[x,y]/(x^2,x*y,y^2)"]);
    assert_eq!(v["result"]["flags"]["arithmetical"]["value"], false);

    let (v, _) = json(&["props", "triv(Zloc(3), Frac)"]);
    assert_eq!(v["result"]["flags"]["valuation"]["value"], true);

    let (v, _) = json(&["props", "triv(Z/2, Z/2)"]);
    assert_eq!(v["result"]["flags"]["valuation"]["value"], true);
    assert_eq!(v["result"]["flags"]["field"]["value"], false);
}

#[test]
fn resolution_of_a_residue_module() {
    let (v, code) = json(&["--max-steps", "4", "resolve", "Z/8", "Z/8/(2)"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 1, 1, 1, 1]));
}

#[test]
fn verify_reports_counts() {
    let (v, code) = json(&["verify", "ex-3.6"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["pass"], true);
    let r = &v["result"];
    assert_eq!(r["id"], "ex-3.6");
    assert_eq!(r["checked"], r["passed"]);
    assert!(r["counterexamples"].as_array().unwrap().is_empty());
}
