use std::path::PathBuf;
use std::process::{Command, Output};

fn mtk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtk")).args(args).output().expect("mtk runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mtk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_invariants_on_truncated_plane() {
    let path = scratch("t3.json");
    let p = path.to_str().unwrap();
    assert!(mtk(&["gen", "truncated_plane", "--param", "q=2", "-o", p]).status.success());
    let out = mtk(&["--report", "jsonl", "invariants", p, "--what", "hyper_numbers,matroidal_numbers"]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let v = &line["value"];
        assert_eq!((v["nu"].as_str(), v["nu_star"].as_str(), v["tau"].as_str()), (Some("1"), Some("2"), Some("2")));
    }
}

#[test]
fn ratio_r_p_of_truncated_plane_is_two() {
    let path = scratch("t3-ratio.json");
    let p = path.to_str().unwrap();
    assert!(mtk(&["gen", "truncated_plane", "--param", "q=2", "-o", p]).status.success());
    let out = mtk(&["--report", "jsonl", "ratio", p, "--pair", "R:P"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["value"], "2");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(mtk(&["verify", "sharpness"]).status.code(), Some(0));
    assert_eq!(mtk(&["verify", "nosuch"]).status.code(), Some(2));
}

#[test]
fn malformed_instance_is_a_usage_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = mtk(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_invariant_is_a_usage_error() {
    let path = scratch("q3.json");
    let p = path.to_str().unwrap();
    assert!(mtk(&["gen", "q_k", "--param", "q=2", "-o", p]).status.success());
    assert_eq!(mtk(&["invariants", p, "--what", "nonsense"]).status.code(), Some(2));
}

#[test]
fn jsonl_verification_output_is_deterministic() {
    let args = ["--report", "jsonl", "verify", "lp-duality", "--seed", "7", "--samples", "5"];
    let a = mtk(&args);
    let b = mtk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], "holds");
    }
}
