use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

use bincensus::cyclestruct::factorial;

fn bincensus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bincensus")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = bincensus(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(format!("{name}-{}", std::process::id()));
    let _ = std::fs::remove_file(&path);
    path
}

#[test]
fn count_reports_b_and_g() {
    let v = json(&["count", "--n", "4"]);
    assert_eq!(v["schema"], "bincensus/1");
    assert_eq!(v["b"], "16");
    assert_eq!(v["G"], "67");
    assert!(v.get("by_dim").is_none());

    let v = json(&["count", "--n", "6", "--by-dim"]);
    assert_eq!(v["b"], "68");
    let dims: Vec<&str> = v["by_dim"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(dims, ["1", "6", "16", "22", "16", "6", "1"]);
}

#[test]
fn gauss_totals_and_binomials() {
    assert_eq!(stdout(&bincensus(&["gauss", "--n", "2", "--q", "2"])), "5\n");
    assert_eq!(stdout(&bincensus(&["gauss", "--n", "4", "--q", "2", "--d", "2"])), "35\n");
    assert_eq!(stdout(&bincensus(&["gauss", "--n", "3", "--q", "4"])), "44\n");
    assert_eq!(stdout(&bincensus(&["gauss", "--n", "3", "--q", "2", "--d", "0"])), "1\n");
    // outside 0..=n there are no subspaces of that dimension
    assert_eq!(stdout(&bincensus(&["gauss", "--n", "3", "--q", "2", "--d", "4"])), "0\n");
    assert_eq!(stdout(&bincensus(&["gauss", "--n", "3", "--q", "2", "--d", "-1"])), "0\n");
}

#[test]
fn lattice_and_oracle_agree() {
    let lattice = json(&["lattice", "--type", "3,2,1"]);
    assert_eq!(lattice["lattice_size"], "54");
    let oracle = json(&["oracle", "--n", "6"]);
    let entry = oracle["by_type"].as_array().unwrap().iter().find(|e| e["type"] == "3,2,1").unwrap();
    assert_eq!(entry["invariant_subspaces"], "54");
    assert_eq!(oracle["subspaces"], 2825);
}

#[test]
fn oracle_classification() {
    let v = json(&["oracle", "--n", "3", "--classify"]);
    assert_eq!(v["b"], 8);
    assert_eq!(v["subspaces"], 16);
}

#[test]
fn limits_record() {
    let v = json(&["limits", "--n", "200", "--precision", "40"]);
    assert_eq!(v["precision"], 40);
    assert!(v["u"].as_str().unwrap().starts_with("7.37196880"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bincensus(&["gauss", "--n", "3", "--q", "6"]).status.code(), Some(2));
    assert_eq!(bincensus(&["lattice", "--type", "3,x"]).status.code(), Some(2));
    assert_eq!(bincensus(&["limits", "--n", "5", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(bincensus(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bincensus(&["verify", "--suite", "nope", "--max-n", "3"]).status.code(), Some(2));
}

#[test]
fn range_errors_exit_three() {
    assert_eq!(bincensus(&["count", "--n", "0"]).status.code(), Some(3));
    assert_eq!(bincensus(&["count", "--n", "1000"]).status.code(), Some(3));
    assert_eq!(bincensus(&["oracle", "--n", "9"]).status.code(), Some(3));
    assert_eq!(bincensus(&["verify", "--suite", "lemma23", "--max-n", "13"]).status.code(), Some(3));
}

#[test]
fn verify_passes_and_reports() {
    let out = bincensus(&["verify", "--suite", "lemma1", "--max-n", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("7.37196"), "{text}");

    let v = json(&["verify", "--suite", "lemma23", "--max-n", "8", "--format", "json"]);
    assert_eq!(v["schema"], "bincensus.verify/1");
    assert_eq!(v["log_base"], "2");
}

#[test]
fn table_csv_correction_round_trips() {
    let out = bincensus(&["table", "--max-n", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,b,G,correction"));
    let scale = BigInt::from(10u32).pow(60);
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let n: usize = f[0].parse().unwrap();
        let b: BigInt = f[1].parse().unwrap();
        let g: BigInt = f[2].parse().unwrap();
        let printed: BigInt = f[3].replace('.', "").parse().unwrap();
        assert_eq!(f[3].split('.').nth(1).unwrap().len(), 60);
        // R = b n! / G - 1, printed to 60 places; allow one unit of rounding
        let exact = (b * BigInt::from(factorial(n)) - &g) * &scale;
        let diff = printed * &g - exact;
        assert!(diff.magnitude() <= g.magnitude(), "n = {n}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = bincensus(&["table", "--max-n", "15", "--format", "json"]);
    let b = bincensus(&["table", "--max-n", "15", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let path = scratch("table.csv");
    let out = bincensus(&["table", "--max-n", "15", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = stdout(&bincensus(&["table", "--max-n", "15"]));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn cache_round_trip() {
    let path = scratch("factors.cache");
    let first = bincensus(&["--cache", path.to_str().unwrap(), "count", "--n", "14"]);
    assert!(first.status.success());
    let saved = std::fs::read_to_string(&path).unwrap();
    assert!(saved.lines().any(|l| l.starts_with("7: 1,3,3;")), "{saved}");

    let second = bincensus(&["--cache", path.to_str().unwrap(), "count", "--n", "14"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), saved);

    // a tampered entry is rejected rather than trusted
    std::fs::write(&path, saved.replace("7: 1,3,3;", "7: 1,3,3,1;")).unwrap();
    let bad = bincensus(&["--cache", path.to_str().unwrap(), "count", "--n", "14"]);
    assert_eq!(bad.status.code(), Some(1));
}
