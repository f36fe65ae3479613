//! C interface to `hypertrace`.
//!
//! Hypergraphs cross the boundary as opaque `HtHypergraph` handles built
//! from JSON. Exact rationals come back as `"num/den"` strings that the
//! caller releases with `ht_string_free`. Every function returns an
//! `HtStatus`; on failure `ht_last_error_message` describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::{Duration, Instant};

use hypertrace::estrada::{compare_ee, default_depth, estrada_truncated, EstradaReport, Verdict};
use hypertrace::oracle::{trace_bruteforce, Budget};
use hypertrace::trace::trace;
use hypertrace::{Error, Hypergraph};

/// Result codes. Values match the command-line exit codes where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    InputError = 2,
    Unsupported = 3,
    ResourceExceeded = 4,
    NullArgument = 5,
    InternalError = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HtVerdict {
    Inconclusive = 0,
    AGreater = 1,
    BGreater = 2,
}

/// Opaque hypergraph handle.
pub struct HtHypergraph(Hypergraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HtStatus {
    match e {
        Error::Input(_) | Error::Construction(_) | Error::Instance { .. } => HtStatus::InputError,
        Error::Unsupported { .. } => HtStatus::Unsupported,
        Error::Resource { .. } => HtStatus::ResourceExceeded,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Run `f`, translating errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HtStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed for `{what}`"));
            HtStatus::NullArgument
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            HtStatus::InternalError
        }
    }
}

unsafe fn handle<'a>(h: *const HtHypergraph, what: &'static str) -> Result<&'a Hypergraph, Failure> {
    h.as_ref().map(|h| &h.0).ok_or(Failure::Null(what))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Parse a hypergraph from NUL-terminated JSON `{"m":…,"n":…,"edges":[…]}`.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_from_json(json: *const c_char, out: *mut *mut HtHypergraph) -> HtStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Error::Input(format!("JSON is not UTF-8: {e}")))?;
        let h = Hypergraph::from_json(text)?;
        *out = Box::into_raw(Box::new(HtHypergraph(h)));
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `h` must come from `ht_hypergraph_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_free(h: *mut HtHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_vertex_count(h: *const HtHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.n())
}

/// `Tr_d` from the closed forms, as `"num/den"`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_trace(h: *const HtHypergraph, d: usize, out: *mut *mut c_char) -> HtStatus {
    guard(|| {
        let h = handle(h, "h")?;
        let t = trace(h, d)?;
        write_string(out, t.to_string())
    })
}

/// `Tr_d` by brute-force enumeration. `budget` caps the number of rooted
/// edge multisets; `max_seconds <= 0` disables the time limit.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_trace_bruteforce(
    h: *const HtHypergraph,
    d: usize,
    budget: u64,
    max_seconds: f64,
    out: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        let h = handle(h, "h")?;
        if budget == 0 {
            return Err(Error::Input("budget must be positive".into()).into());
        }
        let deadline = (max_seconds > 0.0 && max_seconds.is_finite())
            .then(|| Instant::now() + Duration::from_secs_f64(max_seconds));
        let t = trace_bruteforce(h, d, &Budget { max_multisets: budget, deadline })?;
        write_string(out, t.to_string())
    })
}

/// Certified Estrada interval as JSON with fields `lower`, `upper`,
/// `exact_lower`, `exact_upper`, `D`. `depth = 0` picks the default.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_estrada(h: *const HtHypergraph, depth: usize, out: *mut *mut c_char) -> HtStatus {
    guard(|| {
        let h = handle(h, "h")?;
        let depth = if depth == 0 { default_depth(h) } else { depth };
        let report = EstradaReport::from(&estrada_truncated(h, depth)?);
        write_string(out, serde_json::to_string(&report).expect("report serialises"))
    })
}

/// Certified comparison of Estrada indices. `depth = 0` picks the default.
///
/// # Safety
/// `a`, `b` must be live handles; `verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_compare(
    a: *const HtHypergraph,
    b: *const HtHypergraph,
    depth: usize,
    verdict: *mut HtVerdict,
) -> HtStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        if verdict.is_null() {
            return Err(Failure::Null("verdict"));
        }
        let c = compare_ee(a, b, (depth != 0).then_some(depth))?;
        *verdict = match c.verdict {
            Verdict::AGreater => HtVerdict::AGreater,
            Verdict::BGreater => HtVerdict::BGreater,
            Verdict::Inconclusive => HtVerdict::Inconclusive,
        };
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ht_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
