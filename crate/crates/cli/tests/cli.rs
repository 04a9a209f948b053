use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn input(name: &str) -> String {
    root().join("inputs").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibercount"))
        .args(args)
        .env_remove("FIBERCOUNT_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = validator().iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{:#?}", errors);
}

#[test]
fn example2_analyze() {
    let out = run(&["analyze", &input("example2.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["sum_deg_h"], 4);
    assert_eq!(v["bound"], 4);
    assert_eq!(v["satisfied"], true);
    assert_eq!(v["applicable"], true);
    assert_eq!(v["locus"]["points"].as_array().unwrap().len(), 4);
}

#[test]
fn example3_is_not_applicable() {
    let out = run(&["analyze", &input("example3.txt")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["applicable"], false);
    assert_eq!(v["hypotheses"]["is_lci"], false);
}

#[test]
fn example1_bound_with_prop1() {
    let out = run(&["bound", "--smax", "2", &input("example1.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["prop1"]["s"], 2);
    assert_eq!(v["prop1"]["nu"], 8);
}

#[test]
fn every_command_validates() {
    let cases: Vec<Vec<String>> = vec![
        vec!["analyze".into(), input("example1.txt")],
        vec!["analyze".into(), input("example4_d5.txt")],
        vec!["fibers".into(), input("example2.txt")],
        vec!["fibers".into(), "--point".into(), "0:0:1:-1".into(), input("example2.txt")],
        vec!["bound".into(), input("example4_d4.txt")],
        vec!["scan".into(), "--ext".into(), "2".into(), input("example2_mod7.txt")],
        vec!["hilbert".into(), "--upto".into(), "8".into(), input("example1.txt")],
        vec!["analyze".into(), input("monomial_cubics.txt")],
        vec!["analyze".into(), input("conjugate_lines_mod7.txt")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert!(matches!(out.status.code(), Some(0) | Some(2)), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
        assert_valid(&json(&out));
    }
}

#[test]
fn scan_finds_the_example2_lines() {
    let out = run(&["scan", "--ext", "2", &input("example2_mod7.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sum_deg_h"], 4);
    assert_eq!(v["extension"]["points_scanned"], 49 * 49 * 49 + 49 * 49 + 49 + 1);
}

#[test]
fn output_is_reproducible_without_timings() {
    let a = run(&["--no-timings", "--seed", "5", "analyze", &input("example1.txt")]);
    let b = run(&["--no-timings", "--seed", "5", "analyze", &input("example1.txt")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timings_ms").is_none());
    assert!(json(&run(&["analyze", &input("example2.txt")])).get("timings_ms").is_some());
}

#[test]
fn errors_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("fibercount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "field rational\ndegree 3\nf0 X1^3 +\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(out.stdout.is_empty());

    let out = run(&["scan", &input("example2.txt")]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["analyze", dir.join("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_prints_csv() {
    let out = run(&["sweep", "--dmin", "3", "--dmax", "4", "--samples", "2", "--ext", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,attempted,accepted,max_sum,bound,seed");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("3,2,"));
    assert!(lines[2].starts_with("4,2,"));
}
