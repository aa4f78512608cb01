use std::process::{Command, Output};

use serde_json::Value;

fn floquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floquet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = floquet(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn order_prints_group_sizes() {
    assert_eq!(stdout(&floquet(&["order", "--n", "2"])).trim(), "720");
    assert_eq!(stdout(&floquet(&["order", "--n", "1"])).trim(), "6");
    assert_eq!(stdout(&floquet(&["order", "--n", "4", "--k", "2"])).trim(), "35");
}

#[test]
fn exact_wall_probability() {
    let o = floquet(&["--assert", "walls", "prob", "--n", "1", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("probability: 3/25"), "{text}");
    assert!(text.contains("rounds to 0.12: true"));
    assert!(text.contains("product form: 36 of 720"));
}

#[test]
fn evolve_is_deterministic_and_tagged() {
    let args = ["--seed", "7", "evolve", "--L", "6", "--N", "2", "--t", "3", "--initial", "local:2"];
    let a = floquet(&args);
    let b = floquet(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["streams"], 8);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["trajectory"].as_array().unwrap().len(), 7);
}

#[test]
fn time_spellings_agree() {
    let t2 = |t: &str| json(&["--seed", "1", "evolve", "--L", "4", "--N", "1", "--t", t])["t2"].clone();
    assert_eq!(t2("3/2"), 3);
    assert_eq!(t2("1.5"), 3);
    assert_eq!(t2("t2=3"), 3);
}

#[test]
fn missing_seed_is_reported() {
    let o = floquet(&["evolve", "--L", "2", "--N", "1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("seed: "), "{err}");
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(floquet(&["order"]).status.code(), Some(2));
    assert_eq!(floquet(&["walls", "prob", "--n", "2", "--exact"]).status.code(), Some(2));
    assert_eq!(floquet(&["--seed", "1", "evolve", "--L", "3", "--N", "1", "--t", "1"]).status.code(), Some(2));
    assert_eq!(floquet(&["--seed", "1", "evolve", "--L", "4", "--N", "1", "--t", "1/3"]).status.code(), Some(2));
    assert_eq!(floquet(&["--format", "svg", "order", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn design_check_reports_exact_rational() {
    let v = json(&["--assert", "design", "check", "--L", "4", "--N", "2", "--t", "3/2", "--exact"]);
    assert_eq!(v["worst_l1_exact"], "55280/1559733");
    assert_eq!(v["pass"], true);
}

#[test]
fn oracle_csv_sums_to_all_pairs() {
    let o = floquet(&["--format", "csv", "oracle", "enumerate", "--t", "1", "--initial", "local:0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 518_400);
}
