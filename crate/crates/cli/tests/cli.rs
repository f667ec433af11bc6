use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracwave"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const KINK: [&str; 20] = [
    "sample",
    "--equation",
    "mkdv",
    "--family",
    "coth",
    "--alpha",
    "1",
    "--b",
    "1",
    "--lambda",
    "0",
    "--mu",
    "-1",
    "--x-min",
    "-1",
    "--x-max",
    "1",
    "--x-count",
    "3",
    "--t",
];

#[test]
fn ml_eval_prints_a_number() {
    let out = run(&["ml-eval", "--alpha", "1", "--z", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1.0");
    let v: f64 = stdout(&run(&["ml-eval", "--alpha", "0.5", "--z", "1"]))
        .trim()
        .parse()
        .unwrap();
    assert!((v - 5.008_980_080_762_283).abs() < 1e-13);
}

#[test]
fn ml_eval_pole_exits_3() {
    let out = run(&["ml-eval", "--alpha", "1", "--z", "1.5707963267948966", "--kind", "tan"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["ml-eval", "--alpha", "1.5", "--z", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "solve",
            "--equation",
            "mkdv",
            "--b",
            "-1",
            "--lambda",
            "0",
            "--mu",
            "-1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "--equation", "kdv", "--b", "0", "--lambda", "0", "--mu", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "solve",
            "--equation",
            "mkdv",
            "--b",
            "1",
            "--lambda",
            "0",
            "--mu",
            "-1",
            "--a0",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["derive", "--equation", "heat"]).status.code(), Some(2));
}

#[test]
fn family_case_mismatch_exits_2() {
    let mut args = KINK.to_vec();
    args[4] = "tan";
    args.push("0");
    assert_eq!(run(&args).status.code(), Some(2));
    args[4] = "sech";
    assert_eq!(run(&args).status.code(), Some(2), "sech is a KdV-only family");
}

#[test]
fn csv_schema_and_poles() {
    let mut args = KINK.to_vec();
    args.push("0,0.5");
    let out = run(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let meta: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_eq!(meta["family"], "coth");
    assert_eq!(meta["c_alpha"], 2.0);
    assert_eq!(lines.next(), Some("t,x,u"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 3));
    assert_eq!(rows[1], ["0.0", "0.0", ""]);
    let u: f64 = rows[0][2].parse().unwrap();
    assert!((u + 6f64.sqrt() / 1f64.tanh()).abs() < 1e-12);
}

#[test]
fn json_sample_marks_poles_null() {
    let mut args = KINK.to_vec();
    args.extend(["0", "--format", "json"]);
    let out: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    let samples = out["rows"].as_array().expect("rows array");
    assert_eq!(samples.len(), 3);
    assert!(samples[1]["u"].is_null());
}

#[test]
fn solve_reports_numeric_consistency() {
    let out = run(&[
        "solve",
        "--equation",
        "kdv",
        "--b",
        "1",
        "--lambda",
        "1",
        "--mu",
        "0",
        "--numeric",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["numeric"]["consistent"], true);
    let values = &v["assignments"][0]["values"];
    assert_eq!(values["a1"]["exact"], "-12");
    assert_eq!(values["c_alpha"]["value"], -1.0);
}

#[test]
fn verify_exits_zero() {
    let out = run(&["verify", "--suite", "symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr)
        .lines()
        .any(|l| l.starts_with("PASS") && l.ends_with("kdv-closed-form")));
}
