use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diracbound"))
        .args(args)
        .env("DIRACBOUND_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn json(cache: &Path, args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(cache, &all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

#[test]
fn lambda1_cp3_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["lambda1", "CP3"]);
    assert_eq!(code, 0);
    for key in ["command", "space", "inputs", "result", "exact", "minimizers", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["result"]["lambda1"]["exact"], "16");
    let comps: Vec<&str> = v["result"]["components"].as_array().unwrap().iter().map(|c| c["value"]["exact"].as_str().unwrap()).collect();
    assert_eq!(comps, ["24", "16", "16", "24"]);
    assert_eq!(v["exact"], true);
}

#[test]
fn cache_is_transparent_and_clearable() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(dir.path(), &["--json", "lambda1", "S5"]);
    let second = run(dir.path(), &["--json", "lambda1", "S5"]);
    assert_eq!(first.stdout, second.stdout);
    let uncached = run(dir.path(), &["--json", "--no-cache", "lambda1", "S5"]);
    assert_eq!(first.stdout, uncached.stdout);
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let (code, v) = json(dir.path(), &["cache", "clear"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["removed"], 1);
    let other = tempfile::tempdir().unwrap();
    let flag = run(dir.path(), &["--cache-dir", other.path().to_str().unwrap(), "lambda1", "S2"]);
    assert!(flag.status.success());
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn vafa_witten_modes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["vafa-witten", "S4", "ones"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equalities"], 1);
    assert_eq!(v["result"]["max_norm_sq"]["exact"], "4");
    let (code, v) = json(dir.path(), &["vafa-witten", "CP3", "random:42:100"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["violations"], 0);
    assert_eq!(v["result"]["equalities"], 0);
    assert_eq!(v["result"]["samples"], 100);
    let (_, flags) = json(dir.path(), &["vafa-witten", "CP3", "--seed", "42", "--samples", "100"]);
    assert_eq!(flags["result"], v["result"]);
    let (code, v) = json(dir.path(), &["vafa-witten", "S4", "1,1/2,0.25,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equalities"], 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["vafa-witten", "S4", "1,1,1,1.5"][..],
        &["vafa-witten", "S4", "random:x"],
        &["vafa-witten", "S4", "1,1"],
        &["lambda1", "Berger"],
        &["lambda1", "T9"],
        &["frobnicate"],
        &["index", "sphere", "--m", "2"],
        &["index", "sphere", "--m", "2", "--k", "3", "--deg", "x"],
    ] {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(dir.path(), &["lambda1", "Berger"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("use berger verify"));
}

#[test]
fn berger_verify_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["berger", "verify"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let sweep = v["result"]["sweep"].as_array().unwrap();
    assert_eq!(sweep.len(), 11);
    assert_eq!(sweep[5]["min_eigenvalue_sq"]["exact"], "441/80");

    let mut fx: Value = serde_json::from_str(diracbound::berger::SHIPPED_FIXTURE).unwrap();
    fx["psi"][0][0] = Value::String("7".into());
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, serde_json::to_string(&fx).unwrap()).unwrap();
    let out = run(dir.path(), &["--no-cache", "berger", "verify", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("passed: false"));
    assert!(text.contains("residual 7.500e0"));
}

#[test]
fn index_and_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["index", "sphere", "--m", "2", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["threshold"], "4");
    let (_, v) = json(dir.path(), &["index", "sphere", "--m", "2", "--k", "3", "--deg", "0"]);
    assert_eq!(v["result"]["verdict"], false);
    let (_, v) = json(dir.path(), &["index", "cpn", "--m", "2", "--k", "2"]);
    assert_eq!(v["result"]["threshold"], "3");
    assert_eq!(v["result"]["ch_W"], "3 + 2a - (2/3)a^3");
    let (code, v) = json(dir.path(), &["catalog", "list"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["result"]["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    for id in ["S2", "S4", "S5", "S6", "CP3", "CP5", "Berger"] {
        assert!(ids.contains(&id), "{id}");
    }
    let text = run(dir.path(), &["lambda1", "CP3xS4"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("lambda1: 20"));
}
