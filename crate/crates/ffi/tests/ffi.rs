use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nda_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = nda_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

unsafe fn take(s: *mut c_char) -> String {
    let text = CStr::from_ptr(s).to_str().unwrap().to_string();
    nda_string_free(s);
    text
}

fn fixture(name: &str) -> CString {
    c(&nda_core::fixtures::by_name(name).unwrap().to_json())
}

unsafe fn load(name: &str) -> *mut NdaAutomaton {
    let mut a = ptr::null_mut();
    assert_eq!(nda_automaton_from_json(fixture(name).as_ptr(), &mut a), NdaStatus::Ok);
    assert!(!a.is_null());
    a
}

#[test]
fn words() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(nda_word_classify(c("<a b a>").as_ptr(), &mut out), NdaStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["lo"], serde_json::json!(["b"]));
        assert_eq!(v["rns"], true);
        assert!(last_error().is_none());

        let mut eq = false;
        assert_eq!(nda_word_alpha_eq(c("<a a>").as_ptr(), c("<b b>").as_ptr(), &mut eq), NdaStatus::Ok);
        assert!(eq);
        assert_eq!(nda_word_alpha_eq(c("<a> a").as_ptr(), c("a").as_ptr(), &mut eq), NdaStatus::Semantic);
        assert!(last_error().is_some());
        assert_eq!(nda_word_classify(c("<a (").as_ptr(), &mut out), NdaStatus::Parse);
        assert!(last_error().unwrap().contains("parse"));
    }
}

#[test]
fn null_and_invalid_arguments() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(nda_word_classify(ptr::null(), &mut out), NdaStatus::NullArgument);
        assert_eq!(nda_word_classify(c("a").as_ptr(), ptr::null_mut()), NdaStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(nda_word_classify(bad.as_ptr().cast(), &mut out), NdaStatus::InvalidUtf8);
        let mut n = 0usize;
        assert_eq!(nda_automaton_state_count(ptr::null(), &mut n), NdaStatus::NullArgument);
        assert!(last_error().unwrap().contains("automaton"));
        nda_automaton_free(ptr::null_mut());
        nda_string_free(ptr::null_mut());
    }
}

#[test]
fn automata() {
    unsafe {
        let a = load("ndalang");
        let mut accepted = true;
        assert_eq!(nda_automaton_run(a, c("<a <a").as_ptr(), false, &mut accepted), NdaStatus::Ok);
        assert!(!accepted);
        assert_eq!(nda_automaton_run(a, c("<a <a").as_ptr(), true, &mut accepted), NdaStatus::Ok);
        assert!(accepted);

        let mut valid = false;
        assert_eq!(nda_automaton_validate(a, &mut valid), NdaStatus::Ok);
        assert!(valid);

        let mut json = ptr::null_mut();
        assert_eq!(nda_automaton_to_json(a, &mut json), NdaStatus::Ok);
        let text = take(json);
        let mut b = ptr::null_mut();
        assert_eq!(nda_automaton_from_json(c(&text).as_ptr(), &mut b), NdaStatus::Ok);
        let (mut n, mut m) = (0usize, 0usize);
        nda_automaton_state_count(a, &mut n);
        nda_automaton_state_count(b, &mut m);
        assert_eq!(n, m);
        nda_automaton_free(b);
        nda_automaton_free(a);

        let mut broken = ptr::null_mut();
        let text = std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/broken.json"),
        )
        .unwrap();
        assert_eq!(nda_automaton_from_json(c(&text).as_ptr(), &mut broken), NdaStatus::Ok);
        assert_eq!(nda_automaton_validate(broken, &mut valid), NdaStatus::Ok);
        assert!(!valid);
        assert!(last_error().unwrap().contains("name-erasure"));
        nda_automaton_free(broken);

        let mut none = ptr::null_mut();
        assert_eq!(nda_automaton_from_json(c("{").as_ptr(), &mut none), NdaStatus::Parse);
        assert!(none.is_null());
    }
}

#[test]
fn determinization_and_compilation() {
    unsafe {
        let logging = load("logging");
        let mut det = true;
        assert_eq!(nda_automaton_is_deterministic(logging, &mut det), NdaStatus::Ok);
        assert!(!det);
        nda_automaton_free(logging);
        let a = load("lastletter");
        let mut d = ptr::null_mut();
        assert_eq!(nda_automaton_determinize(a, &mut d), NdaStatus::Ok);
        assert_eq!(nda_automaton_is_deterministic(d, &mut det), NdaStatus::Ok);
        assert!(det);
        nda_automaton_free(d);
        nda_automaton_free(a);

        let supported = load("counterexample");
        assert_eq!(nda_automaton_determinize(supported, &mut d), NdaStatus::Semantic);
        nda_automaton_free(supported);

        let mut r = ptr::null_mut();
        assert_eq!(nda_regex_compile(c("(<a a>)*").as_ptr(), &mut r), NdaStatus::Ok);
        let mut accepted = false;
        assert_eq!(nda_automaton_run(r, c("<a a> <a a>").as_ptr(), false, &mut accepted), NdaStatus::Ok);
        assert!(accepted);
        nda_automaton_free(r);
        assert_eq!(nda_regex_compile(c("a> a").as_ptr(), &mut r), NdaStatus::Semantic);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("nda.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["nda_word_classify", "nda_automaton_determinize", "NDA_STATUS_OK", "typedef struct NdaAutomaton"] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).status() else {
        eprintln!("no C compiler; skipping the syntax check");
        return;
    };
    assert!(status.success());
}
