//! C ABI over `nda-core`.
//!
//! Every function returns an [`NdaStatus`]; results come back through out
//! pointers. Automata are opaque [`NdaAutomaton`] handles released with
//! [`nda_automaton_free`]; strings returned by the library are released with
//! [`nda_string_free`]. On failure, [`nda_last_error`] describes the most
//! recent error on the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nda_core::error::{Error, ErrorKind};
use nda_core::{SAutomaton, Word};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NdaStatus {
    /// Success.
    Ok = 0,
    /// Malformed word, expression or JSON.
    Parse = 1,
    /// Well-formed input that violates a precondition.
    Semantic = 2,
    /// An internal invariant was breached.
    Internal = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// The library panicked; the call had no effect.
    Panic = 6,
}

/// An automaton handle.
pub struct NdaAutomaton {
    inner: SAutomaton,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(NdaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.kind() {
            ErrorKind::Parse => NdaStatus::Parse,
            ErrorKind::Semantic => NdaStatus::Semantic,
            ErrorKind::Internal => NdaStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NdaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NdaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            NdaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(NdaStatus::NullArgument, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(NdaStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn handle<'a>(p: *const NdaAutomaton) -> Result<&'a SAutomaton, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("automaton"))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(NdaStatus::Internal, "string contains NUL".to_string()))
}

fn boxed(a: SAutomaton) -> *mut NdaAutomaton {
    Box::into_raw(Box::new(NdaAutomaton { inner: a }))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn nda_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nda_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The profile of a word as JSON `{"rc":[..],"lo":[..],"lc":[..],"rns":bool}`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_word_classify(word: *const c_char, out_json: *mut *mut c_char) -> NdaStatus {
    guard(|| {
        let w = Word::parse(text(word, "word")?)?;
        let p = nda_core::words::classify(&w);
        let names = |s: &nda_core::NameSet| s.iter().map(|a| a.to_string()).collect::<Vec<_>>();
        let json = serde_json::json!({
            "rc": names(&p.rc),
            "lo": names(&p.lo),
            "lc": names(&p.lc),
            "rns": nda_core::words::is_rns(&w),
        });
        put(out_json, owned_string(json.to_string())?, "out_json")
    })
}

/// Whether two right-non-shadowing words are α-equivalent.
///
/// # Safety
/// `left` and `right` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_word_alpha_eq(left: *const c_char, right: *const c_char, out: *mut bool) -> NdaStatus {
    guard(|| {
        let w = Word::parse(text(left, "left")?)?;
        let v = Word::parse(text(right, "right")?)?;
        put(out, nda_core::words::alpha_eq(&w, &v)?, "out")
    })
}

/// Parses an automaton from its JSON encoding.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_from_json(json: *const c_char, out: *mut *mut NdaAutomaton) -> NdaStatus {
    guard(|| {
        let a = SAutomaton::from_json(text(json, "json")?)?;
        put(out, boxed(a), "out")
    })
}

/// Releases an automaton handle. Null is ignored.
///
/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_free(a: *mut NdaAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// The JSON encoding of an automaton.
///
/// # Safety
/// `a` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_to_json(a: *const NdaAutomaton, out_json: *mut *mut c_char) -> NdaStatus {
    guard(|| {
        let a = handle(a)?;
        put(out_json, owned_string(a.to_json())?, "out_json")
    })
}

/// Checks the automaton conditions; the violations, if any, are available
/// through [`nda_last_error`] as JSON.
///
/// # Safety
/// `a` must be a live handle; `out_valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_validate(a: *const NdaAutomaton, out_valid: *mut bool) -> NdaStatus {
    let mut report = None;
    let status = guard(|| {
        let r = handle(a)?.validate_nda();
        put(out_valid, r.is_valid(), "out_valid")?;
        report = Some(r);
        Ok(())
    });
    if let Some(r) = report.filter(|r| !r.is_valid()) {
        set_error(serde_json::to_string(&r).unwrap_or_default());
    }
    status
}

/// Runs a word, literally or up to α-equivalence.
///
/// # Safety
/// `a` must be a live handle, `word` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_run(
    a: *const NdaAutomaton,
    word: *const c_char,
    alpha: bool,
    out: *mut bool,
) -> NdaStatus {
    guard(|| {
        let a = handle(a)?;
        let w = Word::parse(text(word, "word")?)?;
        let accepted = if alpha { a.accepts_alpha(&w)? } else { a.run_literal(&w)? };
        put(out, accepted, "out")
    })
}

/// Determinizes an automaton into a new handle.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_determinize(a: *const NdaAutomaton, out: *mut *mut NdaAutomaton) -> NdaStatus {
    guard(|| {
        let (d, _) = nda_core::constructions::determinize(handle(a)?)?;
        put(out, boxed(d), "out")
    })
}

/// Whether the automaton is deterministic.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_is_deterministic(a: *const NdaAutomaton, out: *mut bool) -> NdaStatus {
    guard(|| put(out, handle(a)?.is_deterministic(), "out"))
}

/// The number of states.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_automaton_state_count(a: *const NdaAutomaton, out: *mut usize) -> NdaStatus {
    guard(|| put(out, handle(a)?.num_states(), "out"))
}

/// Compiles a regular deallocation expression into an automaton.
///
/// # Safety
/// `regex` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nda_regex_compile(regex: *const c_char, out: *mut *mut NdaAutomaton) -> NdaStatus {
    guard(|| {
        let r = nda_core::expressions::Regex::parse(text(regex, "regex")?)?;
        put(out, boxed(nda_core::expressions::regex_to_dnfa(&r)?), "out")
    })
}
