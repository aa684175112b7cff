use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn teich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teich")).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn footer(out: &Output) -> Value {
    lines(out).pop().expect("footer")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let args = ["verify", "--scope", "all", "--genus", "2", "--samples", "100", "--seed", "7"];
    let (a, b) = (teich(&args), teich(&args));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let header = &lines(&a)[0];
    assert_eq!(header["schema"], "teich-report/1");
    assert_eq!(header["seed"], 7);
    assert_eq!(footer(&a)["status"], "pass");
}

#[test]
fn different_seeds_give_different_reports() {
    let a = teich(&["verify", "--scope", "euler", "--seed", "1", "--samples", "2"]);
    let b = teich(&["verify", "--scope", "euler", "--seed", "2", "--samples", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn model_loop_rows_pass() {
    let out = teich(&["verify", "--scope", "lemmas", "--samples", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let records = lines(&out);
    let rows = &records[1..records.len() - 1];
    assert_eq!(rows.len(), 8 + 8 + 16);
    for row in rows {
        assert_eq!(row["pass"], true);
        assert_eq!(row["expected"], row["computed"]);
    }
}

#[test]
fn euler_scope_covers_every_sign_count_in_genus_three() {
    let out = teich(&["verify", "--scope", "euler", "--genus", "3", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let records = lines(&out);
    let expected: Vec<i64> = records[1..records.len() - 1].iter().map(|r| r["expected"].as_i64().unwrap()).collect();
    assert_eq!(expected, (0..=10).map(|n| 1 + n - 6).collect::<Vec<_>>());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--scope", "nonsense"],
        vec!["verify", "--genus", "1"],
        vec!["verify", "--samples", "0"],
        vec!["flip", "--edge", "999"],
        vec!["zero-locus", "--edge", "1", "--x", "0.5", "--exact"],
        vec!["verify", "--scope", "theorem2", "--exact"],
        vec!["length", "--edge", "0", "/nonexistent/point.json"],
        vec!["boundary", "--exact"],
    ] {
        let out = teich(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote a partial report");
    }
}

#[test]
fn sample_then_file_commands() {
    let dir = tempfile::tempdir().unwrap();
    let point = dir.path().join("point.json");
    let out = teich(&["sample", "--genus", "2", "--neg-triangle", "3", "--seed", "11", "--save", path_arg(&point)]);
    assert_eq!(out.status.code(), Some(0));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&point).unwrap()).unwrap();
    assert_eq!(saved["eps"]["3"], -1);

    for verb in ["euler", "roundtrip", "boundary"] {
        let out = teich(&[verb, path_arg(&point)]);
        assert_eq!(out.status.code(), Some(0), "{verb}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let flipped = dir.path().join("flipped.json");
    let out = teich(&["flip", "--edge", "2", path_arg(&point), "--save", path_arg(&flipped)]);
    assert_eq!(out.status.code(), Some(0));
    let out = teich(&["euler", path_arg(&flipped)]);
    assert_eq!(out.status.code(), Some(0));
    let out = teich(&["roundtrip", "--exact", path_arg(&flipped)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let out = teich(&["gen", "--genus", "3", "--out", path_arg(&report)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["status"], "pass");
}

#[test]
fn pipeline_discrepancies() {
    let empty = teich(&["pipeline", "--seed", "4"]);
    assert_eq!(empty.status.code(), Some(0));
    let summary = lines(&empty).into_iter().find(|r| r["name"] == "pipeline").unwrap();
    assert!(summary["residual"].as_f64().unwrap() <= 1e-12);

    let single = teich(&["pipeline", "--seed", "4", "--edges", "5"]);
    assert_eq!(single.status.code(), Some(0));
    let summary = lines(&single).into_iter().find(|r| r["name"] == "pipeline").unwrap();
    assert!(summary["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn exact_flip_and_inverse_flip_restore_the_values() {
    let out = teich(&["pipeline", "--exact", "--seed", "9", "--edges", "3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let records = lines(&out);
    let start = records.iter().find(|r| r["name"] == "start values").unwrap();
    let end = records.iter().find(|r| r["name"] == "final coordinates").unwrap();
    assert_eq!(start["expected"], end["computed"]);
    let step = records.iter().find(|r| r["name"] == "step 0 flip 3 values").unwrap();
    assert_eq!(step["residual"], 0.0);
}

#[test]
fn degenerate_flip_is_a_failed_record() {
    let dir = tempfile::tempdir().unwrap();
    let point = dir.path().join("ones.json");
    let tau: Value = {
        let out = teich(&["gen", "--genus", "2"]);
        lines(&out).into_iter().find(|r| r["name"] == "triangulation json").unwrap()["computed"].clone()
    };
    let f: serde_json::Map<String, Value> = (0..9).map(|i| (i.to_string(), Value::from(1.0))).collect();
    // Opposite signs on the two sides make the Ptolemy sum vanish at unit values.
    let eps: serde_json::Map<String, Value> =
        (0..6).map(|i| (i.to_string(), Value::from(if i == 0 { -1 } else { 1 }))).collect();
    let doc = serde_json::json!({ "triangulation": tau, "f": f, "eps": eps });
    std::fs::write(&point, doc.to_string()).unwrap();

    let edge = (0..9)
        .find(|e| teich(&["flip", "--edge", &e.to_string(), path_arg(&point)]).status.code() == Some(1))
        .expect("an edge of the negative triangle is degenerate");
    let out = teich(&["flip", "--edge", &edge.to_string(), path_arg(&point)]);
    let records = lines(&out);
    assert!(records[1]["computed"]["error"].as_str().unwrap().contains("egenerate"));
    assert_eq!(footer(&out)["status"], "fail");
}

#[test]
fn zero_locus_length_and_fiber() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for (seed, path) in [("1", &a), ("2", &b)] {
        let out = teich(&["zero-locus", "--genus", "3", "--edge", "4", "--x", "0.5", "--seed", seed, "--save", path_arg(path)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let out = teich(&["length", "--edge", "4", path_arg(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let curve = lines(&out).into_iter().find(|r| r["name"] == "curve across e4").unwrap();
    assert!((curve["computed"]["length"].as_f64().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-9);
    assert!((curve["computed"]["trace"].as_f64().unwrap() - 2.5).abs() < 1e-9);

    let out = teich(&["fiber-check", "--edge", "4", path_arg(&a), path_arg(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let fiber = lines(&out).into_iter().find(|r| r["name"] == "fiber").unwrap();
    assert_eq!(fiber["computed"]["equivalent"], false);

    let sampled = dir.path().join("sampled.json");
    teich(&["sample", "--genus", "3", "--save", path_arg(&sampled)]);
    let out = teich(&["length", "--edge", "4", path_arg(&sampled)]);
    assert_eq!(out.status.code(), Some(2));
}
