use std::process::{Command, Output};

use serde_json::Value;

fn pseudodiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudodiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = pseudodiff(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

#[test]
fn relation_of_fractional_pair() {
    let (code, v) = json(&[
        "bc",
        "relate",
        "--p",
        "(1)*D^1",
        "--q",
        "frac((1)*D^2+(1)*D^0;(1)*D^1)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["relation"], "z*w - z^2 - 1");
    assert_eq!(v["provenance"]["window"]["nmax"], 3);
}

#[test]
fn quotient_of_example_plane() {
    let (code, v) = json(&["plane", "kw", "--example", "4.5", "--f", "z"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["quotient_dim"], 1);
    assert_eq!(v["payload"]["stabilized"], true);
}

#[test]
fn cuspidal_curve_text_report() {
    let out = pseudodiff(&[
        "krichever",
        "elliptic",
        "--g2",
        "0",
        "--g3",
        "0",
        "--a",
        "1",
        "--b",
        "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("relation: w^2 - 4*z^3"), "{text}");
    assert!(text.contains("section: preserving"), "{text}");
}

#[test]
fn smooth_curve_relation() {
    let (code, v) = json(&[
        "krichever",
        "elliptic",
        "--g2",
        "-6",
        "--g3",
        "6",
        "--a",
        "1",
        "--b",
        "2",
        "--depth",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["relation"], "w^2 - 4*z^3 - 6*z + 6");
    assert_eq!(v["payload"]["rank1"], true);
}

#[test]
fn point_off_curve_is_an_error() {
    let (code, v) = json(&[
        "krichever",
        "elliptic",
        "--g2",
        "0",
        "--g3",
        "0",
        "--a",
        "1",
        "--b",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert_eq!(v["payload"]["error"]["code"], "point_not_on_curve");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pseudodiff(&["--bogus"]).status.code(), Some(2));
    assert_eq!(
        pseudodiff(&["selftest", "--only", "11"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pseudodiff(&[
            "plane",
            "kw",
            "--example",
            "4.5",
            "--plane",
            "x.json",
            "--f",
            "z"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn parse_errors_exit_one() {
    let (code, v) = json(&["psdo", "mul", "--p", "(1)*D^", "--q", "(1)*D^1"]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["error"]["code"], "parse_error");
}

#[test]
fn insufficient_budget_is_unknown() {
    let (code, v) = json(&[
        "bc", "relate", "--p", "(1)*D^2", "--q", "(1)*D^3", "--nmax", "1",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "unknown-at-precision");
    assert!(v["payload"]["error"]["growth"].is_array());
}

#[test]
fn selftest_single_criterion() {
    let (code, v) = json(&["selftest", "--only", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["passed"], 1);
    assert_eq!(v["payload"]["total"], 1);
}

#[test]
fn plane_round_trips_through_json() {
    let dir = std::env::temp_dir().join(format!("pseudodiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("plane.json");
    let out = pseudodiff(&[
        "--json",
        "plane",
        "show",
        "--example",
        "rank2",
        "--depth",
        "6",
    ]);
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();

    let (_, shown) = json(&["plane", "show", "--plane", p, "--depth", "6"]);
    let original: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(shown["payload"], original["payload"]);

    let (code, v) = json(&["plane", "rank", "--plane", p, "--f", "z^2", "--depth", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["rank"], 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn weierstrass_coefficients() {
    let (code, v) = json(&[
        "krichever",
        "weierstrass",
        "--g2",
        "-6",
        "--g3",
        "6",
        "--terms",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["payload"]["coeffs"],
        serde_json::json!(["-3/10", "3/14", "3/100"])
    );
}

#[test]
fn operator_text_round_trips() {
    let (_, v) = json(&["psdo", "invert", "--p", "(1)*D^1+(x)*D^0", "--prec-x", "5"]);
    let inverse = v["payload"]["result"].as_str().unwrap().to_string();
    let (code, again) = json(&[
        "psdo", "mul", "--p", &inverse, "--q", "(1)*D^0", "--prec-x", "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(again["payload"]["result"], inverse.as_str());
}
