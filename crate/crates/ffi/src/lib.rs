//! C ABI for `prodfree`.
//!
//! Automata and explicit sets cross the boundary as opaque handles owned by
//! the caller and released with `pf_dfa_free` / `pf_set_free`. Every
//! fallible function returns a `PfStatus`; on failure
//! `pf_last_error_message` describes the error for the calling thread.
//! Strings returned through `char **` must be released with
//! `pf_string_free`. Exact rationals are returned as `"num/den"`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prodfree::constructions::{odd_occurrence, GammaSpec};
use prodfree::density::refined_density;
use prodfree::productfree::{check_explicit, check_regular};
use prodfree::report::rational_string;
use prodfree::search::{max_productfree, Objective};
use prodfree::sets::DEFAULT_STATE_CAP;
use prodfree::words::WordList;
use prodfree::{Alphabet, Dfa, Error, LayeredSet};

/// Opaque handle to a complete automaton.
pub struct PfDfa(Dfa);

/// Opaque handle to an explicit truncated set.
pub struct PfSet(LayeredSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Budget = 5,
    Precondition = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PfStatus {
    match e {
        Error::Parse { .. } => PfStatus::Parse,
        Error::BudgetExceeded { .. } | Error::StateBudget { .. } => PfStatus::Budget,
        Error::Precondition(_) => PfStatus::Precondition,
        _ => PfStatus::InvalidArgument,
    }
}

struct Fail(PfStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let s = status_of(&e);
        set_error(e.to_string());
        Fail(s)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PfStatus::Ok,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("internal panic".into());
            PfStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    set_error(format!("{what} is null"));
    Fail(PfStatus::NullPointer)
}

unsafe fn utf8<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        Fail(PfStatus::InvalidUtf8)
    })
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a nul byte".into());
        Fail(PfStatus::InvalidArgument)
    })?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn give<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an automaton in the text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_dfa_parse(text: *const c_char, out: *mut *mut PfDfa) -> PfStatus {
    guard(|| {
        let dfa = Dfa::parse(utf8(text, "text")?)?;
        give(out, PfDfa(dfa))
    })
}

/// The odd-occurrence automaton for `gamma` over `alphabet`.
///
/// # Safety
/// Both strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_dfa_odd_occurrence(
    alphabet: *const c_char,
    gamma: *const c_char,
    out: *mut *mut PfDfa,
) -> PfStatus {
    guard(|| {
        let a = Alphabet::new(utf8(alphabet, "alphabet")?)?;
        let g = GammaSpec::new(&a, utf8(gamma, "gamma")?)?;
        give(out, PfDfa(odd_occurrence(&a, &g)?))
    })
}

/// # Safety
/// `dfa` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pf_dfa_free(dfa: *mut PfDfa) {
    if !dfa.is_null() {
        drop(Box::from_raw(dfa));
    }
}

/// Serializes an automaton to its text format.
///
/// # Safety
/// `dfa` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_dfa_to_text(dfa: *const PfDfa, out: *mut *mut c_char) -> PfStatus {
    guard(|| give_string(out, handle(dfa, "dfa")?.0.to_text()))
}

/// Sets `*product_free` to 1 or 0.
///
/// # Safety
/// `dfa` must be a live handle; `product_free` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_dfa_check(dfa: *const PfDfa, product_free: *mut c_int) -> PfStatus {
    guard(|| {
        let verdict = check_regular(&handle(dfa, "dfa")?.0, DEFAULT_STATE_CAP)?;
        if product_free.is_null() {
            return Err(null("product_free"));
        }
        *product_free = verdict.is_product_free() as c_int;
        Ok(())
    })
}

/// The layer density `d(n)` as `"num/den"`.
///
/// # Safety
/// `dfa` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_dfa_layer_density(dfa: *const PfDfa, n: usize, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let d = refined_density(&handle(dfa, "dfa")?.0, n, &[])?;
        give_string(out, rational_string(&d))
    })
}

/// Parses an explicit set in the word-list format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_set_parse(text: *const c_char, out: *mut *mut PfSet) -> PfStatus {
    guard(|| {
        let list = WordList::parse(utf8(text, "text")?)?;
        give(out, PfSet(LayeredSet::from_word_list(&list, None)?))
    })
}

/// # Safety
/// `set` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pf_set_free(set: *mut PfSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Serializes a set to the word-list format.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_set_to_text(set: *const PfSet, out: *mut *mut c_char) -> PfStatus {
    guard(|| give_string(out, handle(set, "set")?.0.to_word_list().to_text()))
}

/// Sets `*product_free` to 1 or 0, treating the horizon as the universe.
///
/// # Safety
/// `set` must be a live handle; `product_free` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_set_check(set: *const PfSet, product_free: *mut c_int) -> PfStatus {
    guard(|| {
        let verdict = check_explicit(&handle(set, "set")?.0);
        if product_free.is_null() {
            return Err(null("product_free"));
        }
        *product_free = verdict.is_product_free() as c_int;
        Ok(())
    })
}

/// The layer density `d(n)` as `"num/den"`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_set_layer_density(set: *const PfSet, n: usize, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let d = refined_density(&handle(set, "set")?.0, n, &[])?;
        give_string(out, rational_string(&d))
    })
}

/// Maximum mean-density product-free subset of the ball of radius
/// `horizon`, as a JSON summary. `witness_out` may be null; otherwise it
/// receives the witness set.
///
/// # Safety
/// `alphabet` must be nul-terminated; `json_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_search(
    alphabet: *const c_char,
    horizon: usize,
    budget: u64,
    json_out: *mut *mut c_char,
    witness_out: *mut *mut PfSet,
) -> PfStatus {
    guard(|| {
        let a = Alphabet::new(utf8(alphabet, "alphabet")?)?;
        if json_out.is_null() {
            return Err(null("json_out"));
        }
        let result = max_productfree(&a, horizon, Objective::Mean, budget)?;
        let json = serde_json::to_string(&result.summary()).map_err(|e| {
            set_error(e.to_string());
            Fail(PfStatus::Panic)
        })?;
        give_string(json_out, json)?;
        if !witness_out.is_null() {
            give(witness_out, PfSet(result.best))?;
        }
        Ok(())
    })
}
