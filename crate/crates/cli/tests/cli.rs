use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn semiwb(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_semiwb")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::String(text));
    (out.status.code().unwrap_or(-1), value)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("semiwb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn normal_forms_and_consequences() {
    let (code, v) = semiwb(&["nf", "--axiom", "xyy", "xyxy"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "xy^4");
    let (_, v) = semiwb(&["nf", "--axiom", "yxy", "yxy"]);
    assert_eq!(v["normal_form"], "xyx");
    let (_, v) = semiwb(&["consequence", "--axiom", "xyy", "xyx=xyy"]);
    assert_eq!(v["consequence"], true);
    let (_, v) = semiwb(&["consequence", "--axiom", "xyy", "xyxa=xy^2a", "--padded", "0:2"]);
    assert_eq!(v["consequence"], false);
    let (code, _) = semiwb(&["nf", "--axiom", "zzz", "x"]);
    assert_ne!(code, 0);
}

#[test]
fn free_objects() {
    let (_, v) = semiwb(&["free", "--letters", "2", "--nilpotency", "3"]);
    assert_eq!(v["labels"].as_array().unwrap().len(), 15);
    let (_, v) = semiwb(&["free", "--letters", "2", "--nilpotency", "3", "--mod", "x^2y=xy^2"]);
    assert_eq!(v["labels"].as_array().unwrap().len(), 13);
    assert_eq!(v["semigroup"]["order"], 13);
}

#[test]
fn model_search() {
    let (code, v) = semiwb(&["search", "--falsify", "xy=yx", "--orders", "1..2", "--time", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["model"]["semigroup"]["order"], 2);
    assert!(v["model"]["witness"].is_object());
    let (code, v) = semiwb(&["search", "--satisfy", "x=x", "--falsify", "x=x", "--orders", "1..2"]);
    assert_eq!(code, 1);
    assert!(v["model"].is_null());
}

#[test]
fn lattice_commands() {
    let chain3 = scratch("l1.json", r#"{"order":3,"leq":[[1,1,1],[0,1,1],[0,0,1]]}"#);
    let chain4 = scratch("l2.json", r#"{"order":4,"leq":[[1,1,1,1],[0,1,1,1],[0,0,1,1],[0,0,0,1]]}"#);
    let q = scratch("q.json", r#"{"images":[0,0,1,2]}"#);
    let m = scratch("m.json", r#"{"images":[0,2,3]}"#);
    let (_, v) = semiwb(&["lattice", "atoms", chain3.to_str().unwrap()]);
    assert_eq!(v["atoms"], serde_json::json!([1]));
    let args = ["lattice", "adjunction", "--l1", chain3.to_str().unwrap(), "--l2", chain4.to_str().unwrap(), "--q", q.to_str().unwrap(), "--m", m.to_str().unwrap()];
    let (code, v) = semiwb(&args);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["hypothesis_1"], true);
    assert_eq!(v["report"]["hypothesis_2"], false);
    assert_eq!(v["conclusions"]["a"], false);
    assert_eq!(v["conclusions"]["b"], false);
    let bad = scratch("bad.json", r#"{"order":2,"leq":[[1,1],[1,1]]}"#);
    let (code, _) = semiwb(&["lattice", "atoms", bad.to_str().unwrap()]);
    assert_ne!(code, 0);
}

#[test]
fn avoidability_commands() {
    let (_, v) = semiwb(&["avoid", "zimin", "3"]);
    assert_eq!(v["word"], "abacaba");
    let (_, v) = semiwb(&["avoid", "check", "xyx"]);
    assert_eq!(v["unavoidable"], true);
    let (_, v) = semiwb(&["avoid", "check", "x^2y"]);
    assert_eq!(v["unavoidable"], false);
    let (_, v) = semiwb(&["avoid", "prefix", "12"]);
    assert_eq!(v["word"].as_str().unwrap().len(), 12);
    assert!(v["square"].is_null());
}

#[test]
fn verify_command() {
    let (code, v) = semiwb(&["verify", "thm-132-sapir", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v[0]["status"], "pass");
    let (code, _) = semiwb(&["verify", "lem-extralength"]);
    assert_eq!(code, 1);
    let (code, _) = semiwb(&["verify", "no-such-check"]);
    assert_ne!(code, 0);
}
