use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leibniz"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn generate(dir: &TempDir, family: &str, field: &str, name: &str) -> PathBuf {
    let path = dir.path().join(name);
    let (code, _) = run(&["generate", "--family", family, "--field", field, "--out", path.to_str().unwrap(), "-q"]);
    assert_eq!(code, 0, "generate {family}");
    path
}

fn report(args: &[&str], dir: &Path) -> (i32, Value) {
    let json = dir.join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--json", json.to_str().unwrap(), "--quiet"]);
    let (code, stdout) = run(&full);
    assert!(stdout.is_empty(), "quiet run printed {stdout}");
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    (code, v)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_c2_passes() {
    let dir = TempDir::new().unwrap();
    let c2 = generate(&dir, "cyclic(2)", "Q", "c2.json");
    let (code, v) = report(&["validate", s(&c2)], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["command"], "validate");
    assert_eq!(v["conclusions"].as_array().unwrap().len(), 6);
    assert!(v["conclusions"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn validate_rejects_non_leibniz_and_bad_json() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"field":"Q","dim":2,"products":[[1,2,1,1],[2,1,2,1]]}"#).unwrap();
    let (code, v) = report(&["validate", s(&bad)], dir.path());
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "premises_failed");
    assert_eq!(v["premises"][0]["name"], "leibniz_identity");

    fs::write(&bad, r#"{"field":"Q","dim":2,"products":[[1,1,2,0.5]]}"#).unwrap();
    let (code, v) = report(&["validate", s(&bad)], dir.path());
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "error");
    assert!(v["error"].as_str().unwrap().contains("not an integer"));

    let (code, _) = run(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn engel_sol2_names_e1() {
    let dir = TempDir::new().unwrap();
    let sol2 = generate(&dir, "sol2", "Q", "sol2.json");
    let (code, v) = report(&["engel", s(&sol2)], dir.path());
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "premises_failed");
    let p = v["premises"].as_array().unwrap().iter().find(|p| p["pass"] == false).unwrap();
    assert_eq!(p["witness"]["element"], "e1");
}

#[test]
fn engel_nilpotent_passes_with_flag() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "basis_change(heisenberg3,9)", "F5", "h3.json");
    let (code, v) = report(&["engel", s(&a)], dir.path());
    assert_eq!(code, 0, "{v}");
    let flag = v["conclusions"].as_array().unwrap().iter().find(|c| c["name"] == "engel_flag_complete").unwrap();
    assert_eq!(flag["data"]["dims"].as_array().unwrap().last().unwrap(), 3);
}

#[test]
fn engel_with_module_and_lieset_files() {
    let dir = TempDir::new().unwrap();
    let c2 = generate(&dir, "cyclic(2)", "Q", "c2.json");
    let module = dir.path().join("m.json");
    // One-dimensional trivial module.
    fs::write(&module, r#"{"module_dim":1,"left":[[[0]],[[0]]],"right":[[[0]],[[0]]]}"#).unwrap();
    let lieset = dir.path().join("c.json");
    fs::write(&lieset, "[[1, 0], [0, 1]]").unwrap();
    let (code, v) = report(&["engel", s(&c2), "--module", s(&module), "--lieset", s(&lieset)], dir.path());
    assert_eq!(code, 0, "{v}");

    // {e1} alone is not a Lie set: e1 e1 = e2 is missing.
    fs::write(&lieset, "[[1, 0]]").unwrap();
    let (code, v) = report(&["engel", s(&c2), "--lieset", s(&lieset)], dir.path());
    assert_eq!(code, 1);
    assert_eq!(v["premises"][1]["name"], "lie_set");
    assert_eq!(v["premises"][1]["pass"], false);
}

#[test]
fn analyze_abelian3() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "abelian(3)", "Q", "ab3.json");
    let (code, v) = report(&["analyze", s(&a)], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["conclusions"][0]["data"]["class"], 1);
    assert_eq!(v["conclusions"][0]["data"]["series_dims"], serde_json::json!([3, 0]));
}

#[test]
fn analyze_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "basis_change(direct_sum(cyclic(3),sol2),11)", "F7", "a.json");
    let b = generate(&dir, "basis_change(direct_sum(cyclic(3),sol2),11)", "F7", "b.json");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let (_, first) = run(&["analyze", s(&a)]);
    let (_, second) = run(&["analyze", s(&a)]);
    assert_eq!(first, second);
    assert!(first.contains("\"nilpotent\":false"));
}

#[test]
fn lemma_bound_reports() {
    let dir = TempDir::new().unwrap();
    let c3 = generate(&dir, "cyclic(3)", "Q", "c3.json");
    let (code, v) = report(&["lemma-bound", s(&c3), "--element", "1,0,0"], dir.path());
    assert_eq!(code, 0);
    let words = v["conclusions"].as_array().unwrap().iter().find(|c| c["name"] == "words_vanish").unwrap();
    assert_eq!(words["data"]["word_length"], 7);

    let sol2 = generate(&dir, "sol2", "Q", "sol2.json");
    let (code, _) = report(&["lemma-bound", s(&sol2), "--element", "1,0"], dir.path());
    assert_eq!(code, 1);
    let (code, _) = report(&["lemma-bound", s(&sol2), "--element", "1,0,0"], dir.path());
    assert_eq!(code, 2);
}

#[test]
fn corollaries_from_files() {
    let dir = TempDir::new().unwrap();
    let c2 = generate(&dir, "cyclic(2)", "Q", "c2.json");
    let (code, v) = report(&["corollary", "3", s(&c2)], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["conclusions"][0]["name"], "algebra_nilpotent");

    let map = dir.path().join("d.json");
    fs::write(&map, r#"{"kind":"derivation","matrix":[[1,0],[0,2]]}"#).unwrap();
    let (code, _) = report(&["corollary", "5", s(&c2), "--map", s(&map)], dir.path());
    assert_eq!(code, 0);
    let (code, _) = report(&["corollary", "5", s(&c2)], dir.path());
    assert_eq!(code, 2);

    let c2f7 = generate(&dir, "cyclic(2)", "F7", "c2f7.json");
    fs::write(&map, r#"{"kind":"automorphism","matrix":[[2,0],[0,4]]}"#).unwrap();
    let (code, _) = report(&["corollary", "4", s(&c2f7), "--map", s(&map), "--order", "3"], dir.path());
    assert_eq!(code, 0);
    let (code, _) = report(&["corollary", "5", s(&c2f7), "--map", s(&map)], dir.path());
    assert_eq!(code, 1);

    let h3 = generate(&dir, "heisenberg3", "Q", "h3.json");
    let ideals = dir.path().join("i.json");
    fs::write(&ideals, "[[[0,0,1]], [[0,1,0],[0,0,1]], [[1,0,0],[0,0,1]]]").unwrap();
    let (code, v) = report(&["corollary", "6", s(&h3), "--ideals", s(&ideals)], dir.path());
    assert_eq!(code, 0, "{v}");
    assert!(v["conclusions"].as_array().unwrap().len() >= 4);
}

#[test]
fn generate_rejects_bad_specs() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let (code, _) = run(&["generate", "--family", "cyclic(0)", "--out", s(&out)]);
    assert_eq!(code, 2);
    let (code, _) = run(&["generate", "--family", "sol2", "--field", "F6", "--out", s(&out)]);
    assert_eq!(code, 2);
    assert!(!out.exists());
}

#[test]
fn fuzz_small_corpus() {
    let dir = TempDir::new().unwrap();
    let (code, v) = report(&["fuzz", "--seed", "3", "--count", "20", "--max-dim", "5"], dir.path());
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verdict"], "pass");
    let (_, again) = report(&["fuzz", "--seed", "3", "--count", "20", "--max-dim", "5"], dir.path());
    assert_eq!(v, again);
}

#[test]
fn exit_code_follows_verdict() {
    let dir = TempDir::new().unwrap();
    let c2 = generate(&dir, "cyclic(2)", "Q", "c2.json");
    let sol2 = generate(&dir, "sol2", "Q", "sol2.json");
    for args in [vec!["validate", s(&c2)], vec!["engel", s(&sol2)], vec!["corollary", "4", s(&c2)]] {
        let (code, v) = report(&args, dir.path());
        let expected = match v["verdict"].as_str().unwrap() {
            "pass" => 0,
            "premises_failed" => 1,
            "error" => 2,
            _ => 3,
        };
        assert_eq!(code, expected);
    }
}
