//! End-to-end runs of the `nda` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json")).display().to_string()
}

fn nda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nda")).args(args).env_remove("DEALLOC_COLOR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = nda(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn error(args: &[&str], code: i32) -> Value {
    let out = nda(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn word_commands() {
    let v = json(&["word", "classify", "<a b a>"]);
    assert_eq!(strings(&v["lo"]), ["b"]);
    assert_eq!(strings(&v["rc"]), ["a"]);
    assert_eq!(strings(&v["lc"]), ["a"]);
    assert_eq!(v["rns"], true);
    assert_eq!(json(&["word", "rns", "<a> a"])["rns"], false);
    assert_eq!(json(&["word", "alpha-eq", "<a a>", "<b b>"])["alpha_eq"], true);
    assert_eq!(json(&["word", "alpha-eq", "<a b>", "<b b>"])["alpha_eq"], false);
    assert_eq!(json(&["--pool", "a,b,c", "word", "alpha-eq", "--oracle", "<a a>", "<b b>"])["alpha_eq"], true);
    assert_eq!(json(&["word", "db", "<a b a>"])["db"], "a b a");
    assert_eq!(json(&["word", "disc", "<a a"])["disc"], "<a a>");
    assert_eq!(json(&["word", "disciplined", "<a <b b>"])["disciplined"], false);
}

#[test]
fn pretty_output_is_text() {
    let out = nda(&["--pretty", "word", "classify", "<a"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "rc={} lo={} lc={a} rns=yes");
}

#[test]
fn expression_commands() {
    let v = json(&["rdx", "check", "<a a>"]);
    assert_eq!(v["regdex"], true);
    let v = json(&["rdx", "check", "a> a"]);
    assert_eq!(v["regdex"], false);
    assert_eq!(strings(&v["violations"][0]["clash"]), ["a"]);
    assert_eq!(strings(&json(&["rdx", "enum", "<a a>"])["words"]), ["<a a>"]);
    let compiled = json(&["rdx", "compile", "(<a a>)*"]);
    let dir = tempdir("compile");
    let path = dir.join("star.json");
    std::fs::write(&path, compiled.to_string()).unwrap();
    let words = strings(&json(&["rdx", "enum", path.to_str().unwrap(), "--maxlen", "4"])["words"]);
    assert!(words.contains(&"<a a> <a a>".to_string()));
    let back = json(&["rdx", "from-automaton", path.to_str().unwrap()]);
    let regex = back["regex"].as_str().unwrap();
    assert_eq!(json(&["rdx", "check", regex])["regdex"], true);
    assert_eq!(strings(&json(&["rdx", "enum", regex, "--maxlen", "4"])["words"]), words);
    assert_eq!(error(&["rdx", "compile", "a> a"], 2)["error"], "semantic");
}

#[test]
fn automaton_commands() {
    let ndalang = fixture("ndalang");
    assert_eq!(json(&["nda", "run", &ndalang, "<a <a"])["accepted"], false);
    assert_eq!(json(&["nda", "run", "--alpha", &ndalang, "<a <a"])["accepted"], true);
    assert_eq!(json(&["nda", "run", &ndalang, "<a <b"])["accepted"], true);
    assert_eq!(json(&["nda", "validate", &ndalang])["valid"], true);
    assert_eq!(json(&["nda", "deterministic", &ndalang])["deterministic"], true);
    assert_eq!(json(&["nda", "deterministic", &fixture("logging")])["deterministic"], false);
    let rnna = json(&["nda", "to-rnna", &fixture("allocdealloc")]);
    assert!(rnna.to_string().contains("\"alloc\"") && !rnna.to_string().contains("\"dealloc\""));
    assert!(json(&["nda", "export-dot", &ndalang])["dot"].as_str().unwrap().starts_with("digraph"));
    let dot = nda(&["--pretty", "nda", "export-dot", &ndalang]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph"));
}

#[test]
fn broken_automaton_is_reported() {
    let out = nda(&["nda", "validate", &fixture("broken")]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| x["kind"] == "name-erasure"));
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nda-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn determinize_with_stages() {
    let dir = tempdir("stages");
    let out_path = dir.join("dda.json");
    let stages = dir.join("stages");
    let v = json(&[
        "nda",
        "determinize",
        &fixture("lastletter"),
        "-o",
        out_path.to_str().unwrap(),
        "--emit-stages",
        stages.to_str().unwrap(),
    ]);
    assert_eq!(v["report"]["deterministic"], true);
    for stage in ["input", "namedrop", "restrict", "discipline", "powerset", "nominalize"] {
        assert!(std::fs::read_dir(&stages).unwrap().any(|e| e.unwrap().file_name().to_string_lossy().contains(stage)), "{stage}");
    }
    let dda = out_path.to_str().unwrap();
    assert_eq!(json(&["nda", "deterministic", dda])["deterministic"], true);
    let data = strings(&json(&["lang", "enum", dda, "--flavor", "data", "--maxlen", "3"])["words"]);
    let over_ab: Vec<&str> = data.iter().map(String::as_str).filter(|s| s.split(' ').all(|x| x == "a" || x == "b")).collect();
    let mut expected = vec!["a a", "b b", "a a a", "a b a", "a b b", "b a a", "b a b", "b b b"];
    let mut got = over_ab.clone();
    expected.sort();
    got.sort();
    assert_eq!(got, expected);
    // Determinizing twice gives the same bytes.
    let again = nda(&["nda", "determinize", &fixture("lastletter")]);
    let once = nda(&["nda", "determinize", &fixture("lastletter")]);
    assert_eq!(again.stdout, once.stdout);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn determinize_refuses_a_supported_initial_state() {
    assert_eq!(error(&["nda", "determinize", &fixture("counterexample")], 2)["error"], "semantic");
}

#[test]
fn language_commands() {
    let v = json(&["lang", "enum", &fixture("empty"), "--flavor", "literal", "--maxlen", "3"]);
    assert_eq!(v["count"], 0);
    let dir = tempdir("lang");
    let dropped = dir.join("dropped.json");
    let d = nda(&["nda", "namedrop", &fixture("ndalang")]);
    assert_eq!(d.status.code(), Some(0));
    std::fs::write(&dropped, d.stdout).unwrap();
    let c = json(&["lang", "compare", &fixture("ndalang"), dropped.to_str().unwrap(), "--flavor", "alphatic", "--maxlen", "3"]);
    assert_eq!(c["status"], "equal");
    let c = json(&["lang", "compare", &fixture("ndalang"), dropped.to_str().unwrap(), "--flavor", "literal", "--maxlen", "3"]);
    assert_eq!(c["status"], "right-only");
    assert!(strings(&c["right_only"]).contains(&"<a <a".to_string()));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn errors_and_exit_codes() {
    assert_eq!(error(&["word", "classify", "<a ("], 1)["error"], "parse");
    assert_eq!(error(&["word", "alpha-eq", "<a> a", "a"], 2)["error"], "semantic");
    assert_eq!(error(&["nda", "run", "/nonexistent/automaton.json", "a"], 1)["error"], "parse");
    assert_eq!(nda(&["word"]).status.code(), Some(1));
    assert_eq!(nda(&["no-such-command"]).status.code(), Some(1));
}
