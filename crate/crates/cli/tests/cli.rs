use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn richword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_richword"))
        .args(args)
        .env_remove("RICHWORD_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("richword-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exponent_report() {
    let out = richword(&["exponent", "--word", "0101011"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["max_exponent"], "3/1");
    assert_eq!(v["witness"]["start"], 0);
    assert_eq!(v["witness"]["period"], 2);
    assert_eq!(v["witness"]["length"], 6);
}

#[test]
fn generate_prints_prefix() {
    let out = richword(&["generate", "--recipe", "FGH", "--length", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "0010100101");
    let out = richword(&["generate", "--recipe", "FH", "--length", "3", "--format", "json"]);
    assert_eq!(json(&out)["word"], "001");
}

#[test]
fn table1_matches_and_is_deterministic() {
    let one = richword(&["table1", "--threshold", "14/5", "--jobs", "1"]);
    let many = richword(&["table1", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let v = json(&one);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    assert_eq!(rows[1]["v"], "0121012");
    assert_eq!(rows[1]["got"], "49");
    assert_eq!(rows[7]["expected"], "*");
    assert!(rows.iter().all(|r| r["matches"] == true));
}

#[test]
fn other_threshold_reports_mismatch() {
    let out = richword(&["table1", "--threshold", "3", "--depth-cap", "60"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(richword(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(richword(&["table1", "--threshold", "2.8"]).status.code(), Some(2));
    assert_eq!(richword(&["table1", "--threshold", "2/1"]).status.code(), Some(2));
    assert_eq!(richword(&["exponent"]).status.code(), Some(2));
    assert_eq!(richword(&["generate", "--recipe", "XYZ"]).status.code(), Some(2));
    let long = "0".repeat(4097);
    assert_eq!(richword(&["rich-check", "--word", &long]).status.code(), Some(2));
}

#[test]
fn rich_check_from_file_and_to_file() {
    let input = scratch("words.txt");
    std::fs::write(&input, "0120\n0110\n\n").unwrap();
    let output = scratch("report.json");
    let out = richword(&[
        "rich-check",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["report"]["defect"], 1);
    assert_eq!(results[1]["report"]["defect"], 0);
}

#[test]
fn suites_pass() {
    for args in [
        vec!["run-bound"],
        vec!["lemma-trees"],
        vec!["f-claims"],
        vec!["sturmian-report"],
        vec!["structure-check", "--length", "2000", "--n-max", "3"],
        vec!["rote-check", "--length", "5000", "--n-max", "20"],
        vec!["delta-check", "--seed", "7"],
    ] {
        let out = richword(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn tsv_table() {
    let out = richword(&["lemma-trees", "--tree", "fig2", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tree\tleaf\tverdict\twitness\tcontexts"));
    assert!(text.contains("fig2\t0222\tCube\t222"));
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn structure_rejects_non_good_word() {
    let out = richword(&["structure-check", "--word", "010101"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn full_verify_passes() {
    let out = richword(&["full-verify", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains("\tPASS\t")).count(), 15);
}
