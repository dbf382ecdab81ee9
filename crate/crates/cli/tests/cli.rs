use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syllogism"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn core_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core").join(rel)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EXAMPLE: &str = "All B are A. All C are A. All C are B.";

#[test]
fn parse_lists_propositions() {
    let out = run(&["parse", EXAMPLE]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
    let v = json(&run(&["parse", "--json", EXAMPLE]));
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn parse_failures_exit_2() {
    for (text, kind) in [
        ("Hello.", "WrongSentenceCount"),
        ("", "WrongSentenceCount"),
        ("Hello. There.", "NotAEIO"),
    ] {
        let out = run(&["parse", "--json", text]);
        assert_eq!(out.status.code(), Some(2), "{text:?}");
        let v = json(&out);
        assert_eq!(v["ok"], false);
        assert!(v["error"].as_str().unwrap().contains(kind), "{v}");
    }
}

#[test]
fn validate_summaries() {
    let cases = [
        (EXAMPLE, "invalid (AAA-2)"),
        ("All m are p. All s are m. All s are p.", "valid (AAA-1)"),
        ("All s are p. All s are p.", "valid (trivial: petitio principii)"),
    ];
    for (text, summary) in cases {
        let out = run(&["validate", text]);
        assert!(out.status.success());
        assert!(stdout(&out).starts_with(summary), "{}", stdout(&out));
    }
    let v = json(&run(&["validate", "--json", "All m are p. All s are m. All s are p."]));
    assert_eq!(
        (v["schema_version"].clone(), v["mood"].clone(), v["figure"].clone()),
        (1.into(), "AAA".into(), 1.into())
    );
    assert_eq!(v["verdict"]["valid"], true);
}

#[test]
fn validate_without_import() {
    let text = "All m are p. All s are m. Some s are p.";
    assert!(stdout(&run(&["validate", text])).starts_with("valid (AAI-1)"));
    assert!(stdout(&run(&["validate", "--no-import", text])).starts_with("invalid (AAI-1)"));
}

#[test]
fn validate_english_paraphrases() {
    let text = "Every bike is a vehicle. No vehicle is a cloud. No bike is a cloud.";
    let out = run(&["validate", "--english", text]);
    assert!(stdout(&out).starts_with("valid"), "{}", stdout(&out));
    assert_eq!(run(&["validate", text]).status.code(), Some(2));
}

#[test]
fn relevance_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("args.txt");
    std::fs::write(&f, "Some cats are pets.\nAll m are p.\nAll s are m.\nAll s are p.\n").unwrap();
    let v = json(&run(&["relevance", "--json", path_str(&f)]));
    assert_eq!(v["relevant"], serde_json::json!([1, 2]));
    std::fs::write(&f, "Some cats are pets.\nAll p are m.\nAll s are m.\nAll s are p.\n").unwrap();
    let v = json(&run(&["relevance", "--json", path_str(&f)]));
    assert_eq!(v["relevant"], serde_json::json!([]));
    assert_eq!(v["verdict"]["valid"], false);
    std::fs::write(&f, "All q are r.\nNo s are p.\nNo p are s.\n").unwrap();
    let v = json(&run(&["relevance", "--json", path_str(&f)]));
    assert_eq!(v["relevant"], serde_json::json!([1]));
}

#[test]
fn oracle_counts_and_diff() {
    let v = json(&run(&["oracle", "--json"]));
    assert_eq!(v["valid_count"], 24);
    let v = json(&run(&["oracle", "--json", "--no-import"]));
    assert_eq!(v["valid_count"], 15);
    let out = run(&["oracle", "--diff-table"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = run(&["oracle", "--no-import", "--diff-table"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn oracle_reports_corrupted_reference() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("table.txt");
    std::fs::write(&f, "1: AAA, EAE, AII, EIO, AAI, EAO\n2: EAE, AEE, EIO, AOO, EAO, AEO\n3: AAI, IAI, AII, EAO, OAO, EIO\n4: AAI, AEE, IAI, EAO, EIO, AAA\n").unwrap();
    let out = run(&["oracle", "--diff-table", "--against", path_str(&f)]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("AAA-4") && text.contains("AEO-4"), "{text}");
}

#[test]
fn eval_bundled_corpus() {
    let corpus = core_file("data/synthetic_corpus.jsonl");
    let dir = tempfile::tempdir().unwrap();
    let metrics = dir.path().join("metrics.json");
    let report = dir.path().join("report.json");
    let out = run(&[
        "eval",
        path_str(&corpus),
        "--json",
        "--metrics-out",
        path_str(&metrics),
        "--report-out",
        path_str(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["metrics"]["accuracy"], 100.0);
    assert_eq!(v["metrics"]["bias"], 0.0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&metrics).unwrap()).unwrap();
    assert_eq!(written, v);
    let full: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let ids: Vec<&str> = full["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 512);
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    let table = stdout(&run(&["eval", path_str(&corpus)]));
    assert!(table.contains("accuracy") && table.contains("100.00"), "{table}");
}

#[test]
fn eval_is_byte_identical_across_runs() {
    let corpus = core_file("data/relevance_corpus.jsonl");
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let report = dir.path().join(format!("report{i}.json"));
        assert!(run(&["eval", path_str(&corpus), "--report-out", path_str(&report)])
            .status
            .success());
        reports.push(std::fs::read(&report).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn eval_input_errors_exit_2() {
    let missing = run(&["eval", "/nonexistent/data.jsonl"]);
    assert_eq!(missing.status.code(), Some(2));
    let err = String::from_utf8(missing.stderr).unwrap();
    assert_eq!(err.matches("No such file").count(), 1, "{err}");
    let corpus = core_file("data/synthetic_corpus.jsonl");
    assert_eq!(
        run(&["eval", path_str(&corpus), "--pipeline", "oracle"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["eval", path_str(&corpus), "--pipeline", "fixtures"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{\"id\": 1}\n").unwrap();
    assert_eq!(run(&["eval", path_str(&bad)]).status.code(), Some(2));
}

#[test]
fn normalize_with_fixtures() {
    let fixtures = core_file("fixtures/normalizer.jsonl");
    let raw = "Some housecats enjoy chasing mice. Any animal that enjoys chasing mice is a feline. All cats are animals.";
    let v = json(&run(&[
        "normalize",
        "--engine",
        "fixture",
        "--fixtures",
        path_str(&fixtures),
        raw,
    ]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["mapped"], "A:animal,B:feline,C:cats");
    assert_eq!(v["parsed"], "All B are A. All C are A. All C are B.");
    let miss = run(&[
        "normalize",
        "--engine",
        "fixture",
        "--fixtures",
        path_str(&fixtures),
        "All cats are pets. Some pets are dogs.",
    ]);
    assert_eq!(miss.status.code(), Some(2));
}

#[test]
fn normalize_with_rules() {
    let v = json(&run(&[
        "normalize",
        "Every cat is an animal. No animal is a rock. No cat is a rock.",
    ]));
    assert_eq!(v["mapped"], "A:cat,B:animal,C:rock");
    assert_eq!(v["parsed"], "All A are B. No B are C. No A are C.");
    assert_eq!(v["well_formed"], true);
}

#[test]
fn synth_is_deterministic() {
    let a = run(&["synth", "corpus"]);
    let b = run(&["synth", "corpus"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, std::fs::read(core_file("data/synthetic_corpus.jsonl")).unwrap());
}
