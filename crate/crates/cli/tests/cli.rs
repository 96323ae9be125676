use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn latflow(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latflow")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write_curve(dir: &Path) {
    let o = latflow(&["sim", "example", "--n", "4", "--curve-only", "--out", "curve.json"], dir);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ext_prints_the_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = latflow(&["dioph", "ext", "--n", "4", "--a", "1,2;3,4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-2\n1\n-4\n3\n2\n");
    let o = latflow(&["dioph", "ext", "--n", "5", "--a", "1,2;3,4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn roots_check_lists_the_pass_set() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&latflow(&["roots", "check", "--all", "--max-rank", "3"], dir.path()));
    let passes: Vec<(String, u64)> = v["passes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["system"].as_str().unwrap().to_string(), p["k"].as_u64().unwrap()))
        .collect();
    let expect = [("A1", 1), ("A2", 1), ("A2", 2), ("A3", 1), ("A3", 3), ("B2", 2), ("C2", 1), ("C3", 1), ("D3", 2), ("D3", 3)];
    assert_eq!(passes, expect.iter().map(|(s, k)| (s.to_string(), *k)).collect::<Vec<_>>());
    let one = json(&latflow(&["roots", "check", "--system", "C2", "--k", "1"], dir.path()));
    assert_eq!(one["witnesses"].as_array().unwrap().len(), 4);
    let built = json(&latflow(&["roots", "build", "--system", "A2"], dir.path()));
    assert_eq!(built["roots"].as_array().unwrap().len(), 6);
}

#[test]
fn translate_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    write_curve(dir.path());
    let args = |out: &'static str| {
        vec!["sim", "translate", "--curve", "curve.json", "--t", "0,2,4,6", "--samples", "40", "--seed", "7", "--radius", "1", "--eps", "0.1", "--out", out]
    };
    assert_eq!(latflow(&args("a.csv"), dir.path()).status.code(), Some(0));
    assert_eq!(latflow(&args("b.csv"), dir.path()).status.code(), Some(0));
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.csv")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 * 40);
    assert!(text.starts_with("sample_index,s,t,lambda1,siegel_count,below_eps\n"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    write_curve(dir.path());
    std::fs::write(
        dir.path().join("run.json"),
        r#"{"curve": "curve.json", "t": [1, 2], "samples": 5, "seed": 3, "out": "run.csv"}"#,
    )
    .unwrap();
    let plan = json(&latflow(&["--config", "run.json", "sim", "translate", "--samples", "7", "--dry-run"], dir.path()));
    assert_eq!(plan["options"]["samples"], 7);
    assert_eq!(plan["options"]["seed"], 3);
    assert_eq!(plan["options"]["eps"], 0.1);
    assert_eq!(plan["output"], "run.csv");
    assert!(!dir.path().join("run.csv").exists(), "dry runs write nothing");

    let o = latflow(&["--config", "run.json", "sim", "translate"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 5);

    std::fs::write(dir.path().join("bad.json"), r#"{"curve": "curve.json", "sample": 5}"#).unwrap();
    assert_eq!(latflow(&["--config", "bad.json", "sim", "translate"], dir.path()).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write_curve(dir.path());
    let code = |args: &[&str]| latflow(args, dir.path()).status.code();
    // missing seed
    assert_eq!(code(&["sim", "translate", "--curve", "curve.json", "--t", "1", "--samples", "2"]), Some(2));
    // unknown flag, handled by the parser
    assert_eq!(code(&["kempf", "--bogus"]), Some(2));
    assert_eq!(code(&["sim", "translate", "--curve", "missing.json", "--t", "1", "--samples", "2", "--seed", "1"]), Some(4));
    assert_eq!(code(&["dioph", "ext", "--n", "4", "--a", "1,2;3,4", "--out", "no/such/dir/x.txt"]), Some(4));
    assert_eq!(code(&["dioph", "approx", "--a", "1/3,1/5", "--qmax", "100000", "--budget", "10"]), Some(3));
    assert_eq!(code(&["dioph", "ext", "--n", "4", "--a", "1,2;3,4", "--format", "csv"]), Some(2));
}

#[test]
fn kempf_and_dirichlet_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&latflow(&["kempf", "--n", "2", "--v", "1,0", "--brute", "10"], dir.path()));
    assert_eq!(v["lambda_star"], serde_json::json!([1, -1]));
    assert_eq!(v["b_squared"], "1/2");
    assert!((v["brute_force"]["value"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);

    let s = json(&latflow(&["dirichlet", "--x", "1/3,2/5", "--t", "2,4,8", "--deltas", "0.5,0.1,0.01"], dir.path()));
    assert_eq!(s["verdict"], "singular-evidence");
    let csv = latflow(&["dirichlet", "--x", "1/3,2/5", "--t", "2,4", "--format", "csv"], dir.path());
    assert_eq!(stdout(&csv).lines().count(), 3);

    let recs = latflow(&["dioph", "approx", "--a", "1/3,1/5", "--qmax", "5"], dir.path());
    assert!(stdout(&recs).starts_with("qnorm,q,p,residual,quality\n1,-1;1,0,"));
}
