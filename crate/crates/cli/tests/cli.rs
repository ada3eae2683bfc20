use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affinize")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn char_table_has_dimension_line() {
    let out = run(&["char", "--type", "A", "--rank", "2", "--lambda", "1,1", "--output", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "dimension 8"), "{text}");
}

#[test]
fn trivial_character() {
    let v = json(&["char", "--type", "B", "--rank", "2", "--lambda", "0,0"]);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["terms"], serde_json::json!([{ "weight": [0, 0], "coeff": 1 }]));
}

#[test]
fn b3_decompositions() {
    let v = json(&["decompose", "--type", "B", "--rank", "3", "--lambda", "1,1,2"]);
    let rows = v["components"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["mult"] == 1));
    let v = json(&["decompose", "--type", "B", "--rank", "3", "--lambda", "1,1,1"]);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let v = json(&["example-b44", "--rank", "3", "--m", "1,1,1"]);
    assert_eq!(v["lambda"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["components"].as_array().unwrap().len(), 6);
}

#[test]
fn graded_output_and_other_commands() {
    let v = json(&["char", "--type", "C", "--rank", "2", "--lambda", "1,1", "--graded"]);
    let total: i64 = v["slices"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_i64().unwrap()))
        .sum();
    assert_eq!(total, v["dimension"].as_i64().unwrap());
    let v = json(&["kr", "--type", "B", "--rank", "2", "--i", "2", "--m", "2"]);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let v = json(&["limit-check", "--type", "C", "--rank", "2", "--J", "1", "--height", "3"]);
    assert_eq!(v["stable_from_height"], true);
    let v = json(&["rho-check", "--type", "B", "--rank", "2", "--lambda", "2,1", "--s-max", "1"]);
    assert!(!v["roots"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["char", "--type", "B", "--rank", "3", "--lambda", "1,0,2"];
    let a = run(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, run(&args).stdout);
    let one = Command::new(env!("CARGO_BIN_EXE_affinize")).args(args).env("AFFINIZE_THREADS", "1").output().unwrap();
    assert_eq!(a, one.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["char", "--type", "B", "--rank", "2", "--lambda", "1,-1"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--type", "D", "--rank", "4", "--lambda", "1,0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--type", "B", "--rank", "2", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kr", "--type", "C", "--rank", "2", "--i", "3", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["limit-check", "--type", "B", "--rank", "2", "--J", "5"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_affinize"))
        .args(["selftest"])
        .env("AFFINIZE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));

    let path = std::env::temp_dir().join(format!("affinize-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, r#"[{"weight":[1,0],"coeff":1}]"#).unwrap();
    let out = run(&["decompose", "--type", "A", "--rank", "2", "--from-json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(&path, r#"[{"weight":[1,0],"coeff":1},{"weight":[-1,1],"coeff":1},{"weight":[0,-1],"coeff":1}]"#).unwrap();
    let v = json(&["decompose", "--type", "A", "--rank", "2", "--from-json", path.to_str().unwrap()]);
    assert_eq!(v["components"], serde_json::json!([{ "weight": [1, 0], "mult": 1 }]));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
