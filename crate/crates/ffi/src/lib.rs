//! C ABI over `ascover`.
//!
//! Towers are opaque handles created by `asc_tower_from_json` or
//! `asc_tower_builtin` and released with `asc_tower_free`. Every fallible call
//! returns an `AscStatus`; on failure `asc_last_error` describes the problem
//! until the next call on the same thread. Strings returned by the library are
//! released with `asc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ascover::astower::{self, Subspace, Tower};
use ascover::json::tower_from_json;
use ascover::report::{self, Target};
use ascover::rrspace::RrSpace;
use ascover::{fixtures, Divisor, Error};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AscStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Polynomial, divisor, subspace or JSON syntax error.
    Parse = 3,
    /// Well-formed input that does not describe a valid object.
    InvalidInput = 4,
    /// Extension degree or residue field out of the supported range.
    OutOfRange = 5,
    /// Unknown name (built-in tower or verification target).
    UnknownName = 6,
    /// A panic inside the library; a bug.
    Internal = 7,
}

/// An Artin-Schreier tower over a base curve.
pub struct AscTower {
    inner: Tower,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> AscStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => AscStatus::Parse,
        Error::DegreeOutOfRange(_) | Error::FieldDegree(_) | Error::ResidueFieldTooLarge(_) => AscStatus::OutOfRange,
        Error::UnknownTarget(_) => AscStatus::UnknownName,
        _ => AscStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), AscStatus>) -> AscStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AscStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal error");
            AscStatus::Internal
        }
    }
}

fn fail(e: Error) -> AscStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, AscStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(AscStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        AscStatus::InvalidUtf8
    })
}

unsafe fn tower_arg<'a>(t: *const AscTower) -> Result<&'a Tower, AscStatus> {
    if t.is_null() {
        set_error("tower is null");
        return Err(AscStatus::NullPointer);
    }
    Ok(&(*t).inner)
}

fn out_arg<T>(out: *mut T) -> Result<(), AscStatus> {
    if out.is_null() {
        set_error("output pointer is null");
        return Err(AscStatus::NullPointer);
    }
    Ok(())
}

/// Null `subspace` means the full space.
unsafe fn subspace_arg(t: &Tower, subspace: *const c_char) -> Result<Subspace, AscStatus> {
    if subspace.is_null() {
        return Ok(Subspace::full(t.k()));
    }
    Subspace::parse(t.k(), str_arg(subspace, "subspace")?).map_err(fail)
}

fn boxed(t: Tower, out: *mut *mut AscTower) {
    unsafe { *out = Box::into_raw(Box::new(AscTower { inner: t })) };
}

/// Reads a tower (or a bare curve) from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asc_tower_from_json(json: *const c_char, out: *mut *mut AscTower) -> AscStatus {
    guard(|| {
        out_arg(out)?;
        let t = tower_from_json(str_arg(json, "json")?).map_err(fail)?;
        boxed(t, out);
        Ok(())
    })
}

/// One of the built-in towers, `"serre"` or `"h"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asc_tower_builtin(name: *const c_char, out: *mut *mut AscTower) -> AscStatus {
    guard(|| {
        out_arg(out)?;
        let name = str_arg(name, "name")?;
        let t = fixtures::by_name(name).ok_or_else(|| {
            set_error(&format!("no built-in tower named {name:?}"));
            AscStatus::UnknownName
        })?;
        boxed(t, out);
        Ok(())
    })
}

/// Releases a tower; null is ignored.
///
/// # Safety
/// `t` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn asc_tower_free(t: *mut AscTower) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of covering functions in the tower.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn asc_tower_num_covers(t: *const AscTower, out: *mut u32) -> AscStatus {
    guard(|| {
        out_arg(out)?;
        *out = tower_arg(t)?.k() as u32;
        Ok(())
    })
}

/// Genus of `X_R`. `subspace` uses the CLI syntax; null means everything.
///
/// # Safety
/// Pointers must be valid; `subspace` may be null.
#[no_mangle]
pub unsafe extern "C" fn asc_genus(t: *const AscTower, subspace: *const c_char, out: *mut u64) -> AscStatus {
    guard(|| {
        out_arg(out)?;
        let t = tower_arg(t)?;
        let r = subspace_arg(t, subspace)?;
        *out = astower::genus(t, &r).map_err(fail)?;
        Ok(())
    })
}

/// Number of degree-1 places of `X_R` over GF(2^n), using `threads` workers
/// (0 is treated as 1).
///
/// # Safety
/// Pointers must be valid; `subspace` may be null.
#[no_mangle]
pub unsafe extern "C" fn asc_count_points(
    t: *const AscTower,
    subspace: *const c_char,
    n: u32,
    threads: u32,
    out: *mut u64,
) -> AscStatus {
    guard(|| {
        out_arg(out)?;
        let t = tower_arg(t)?;
        let r = subspace_arg(t, subspace)?;
        *out = astower::count_points(t, &r, n, threads.max(1) as usize).map_err(fail)?;
        Ok(())
    })
}

/// Dimension of the Riemann-Roch space of a divisor on the base curve.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn asc_rr_dimension(t: *const AscTower, divisor: *const c_char, out: *mut u64) -> AscStatus {
    guard(|| {
        out_arg(out)?;
        let t = tower_arg(t)?;
        let d = Divisor::parse(t.base(), str_arg(divisor, "divisor")?).map_err(fail)?;
        *out = RrSpace::new(t.base(), &d).map_err(fail)?.dim() as u64;
        Ok(())
    })
}

/// Runs a verification target and returns its report as JSON in
/// `*json_out` (free with `asc_string_free`). `*passed` is 1 when every check
/// passed, else 0. A failing check is not an error.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn asc_verify(
    target: *const c_char,
    threads: u32,
    json_out: *mut *mut c_char,
    passed: *mut c_int,
) -> AscStatus {
    guard(|| {
        out_arg(json_out)?;
        out_arg(passed)?;
        let target: Target = str_arg(target, "target")?.parse().map_err(fail)?;
        let r = report::verify(target, threads.max(1) as usize);
        *passed = r.passed() as c_int;
        *json_out = CString::new(r.to_json()).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn asc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn asc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn asc_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version"),
    };
    V.as_ptr()
}
