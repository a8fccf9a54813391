//! C ABI over the curve pipeline. Every handle crossing the boundary is an
//! opaque pointer owned by this library; callers release curves, analyses,
//! parametrizations, and strings through the matching `ac_*_free` function.
//! Failures never unwind across the boundary: each entry point catches
//! panics, stores a message in thread-local storage, and returns a status.
//!
//! The generated header lives in `include/approxcurve.h` and is rebuilt by
//! `build.rs` whenever this file changes.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use approxcurve::{
    cluster_decomposition, distance_json, distance_stats, eps_singular_locus, implicitize,
    locus_json, param_json, parametrize, BivarPoly, CurveError, Parametrization, PrecisionContext,
    SimplePointRule,
};

/// Outcome of a fallible call. `NotRational` is a verdict, not a failure:
/// the curve was processed and found outside the rational class at the
/// requested tolerance.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AcStatus {
    Ok = 0,
    Error = 1,
    NotRational = 2,
}

/// Opaque handle to a parsed curve.
pub struct AcCurve {
    inner: BivarPoly,
}

/// Opaque handle to the singular-structure report of one curve at one
/// tolerance: strata, clusters, genus deficiency, rationality verdict.
pub struct AcAnalysis {
    json: String,
    rational: bool,
    deficiency: i64,
    cluster_count: usize,
}

/// Opaque handle to an approximate rational parametrization.
pub struct AcParam {
    inner: Parametrization,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let safe = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = safe);
}

fn fail(status: AcStatus, msg: &str) -> AcStatus {
    set_error(msg);
    status
}

fn fail_from(e: &CurveError) -> AcStatus {
    set_error(&e.to_string());
    match e {
        CurveError::NotRational(_) | CurveError::GenusBudget(_) => AcStatus::NotRational,
        _ => AcStatus::Error,
    }
}

/// Runs an entry point with a panic barrier; a panic becomes `Error` with
/// the message "internal panic".
fn guarded<F: FnOnce() -> AcStatus>(body: F) -> AcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(AcStatus::Error, "internal panic"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    // Pipeline output is JSON or polynomial text and never contains NUL,
    // so the fallback null is unreachable in practice.
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Message for the most recent failure on the calling thread, empty when no
/// failure has occurred. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is accepted.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a function of this
/// library that documents `ac_string_free` as its deallocator.
#[no_mangle]
pub unsafe extern "C" fn ac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses polynomial text (for example `x^3*y + x*y^3 - 2.5*x + 1`) into a
/// curve handle written to `out`. Release the handle with `ac_curve_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_parse(text: *const c_char, out: *mut *mut AcCurve) -> AcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(AcStatus::Error, "null output pointer");
        }
        unsafe { *out = std::ptr::null_mut() };
        if text.is_null() {
            return fail(AcStatus::Error, "null input text");
        }
        let s = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(s) => s,
            Err(_) => return fail(AcStatus::Error, "input text is not valid UTF-8"),
        };
        match BivarPoly::parse(s.trim()) {
            Ok(p) => {
                unsafe { *out = Box::into_raw(Box::new(AcCurve { inner: p })) };
                AcStatus::Ok
            }
            Err(e) => fail_from(&e),
        }
    })
}

/// Releases a curve handle. NULL is accepted.
///
/// # Safety
/// `curve` must be NULL or a live handle from `ac_curve_parse`.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_free(curve: *mut AcCurve) {
    if !curve.is_null() {
        drop(unsafe { Box::from_raw(curve) });
    }
}

/// Total degree of the curve; -1 for a null handle or the zero polynomial.
///
/// # Safety
/// `curve` must be NULL or a live handle from `ac_curve_parse`.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_degree(curve: *const AcCurve) -> i32 {
    if curve.is_null() {
        return -1;
    }
    let c = unsafe { &*curve };
    c.inner.total_degree().map_or(-1, |d| d as i32)
}

/// Canonical text form of the curve, or NULL for a null handle. Free the
/// result with `ac_string_free`.
///
/// # Safety
/// `curve` must be NULL or a live handle from `ac_curve_parse`.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_text(curve: *const AcCurve) -> *mut c_char {
    if curve.is_null() {
        return std::ptr::null_mut();
    }
    let c = unsafe { &*curve };
    into_c_string(c.inner.to_text())
}

/// Detects the singular structure of `curve` at tolerance `eps` and writes
/// an analysis handle to `out`. A curve that fails the rationality test
/// still analyzes with status `Ok`; query the verdict with
/// `ac_analysis_rational`. Release the handle with `ac_analysis_free`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_analyze(
    curve: *const AcCurve,
    eps: f64,
    out: *mut *mut AcAnalysis,
) -> AcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(AcStatus::Error, "null output pointer");
        }
        unsafe { *out = std::ptr::null_mut() };
        if curve.is_null() {
            return fail(AcStatus::Error, "null curve handle");
        }
        let f = unsafe { &(*curve).inner };
        let ctx = match PrecisionContext::for_curve(f, eps) {
            Ok(ctx) => ctx,
            Err(e) => return fail_from(&e),
        };
        let d = match f.proper_degree(eps) {
            Ok(Some(d)) => d,
            Ok(None) => {
                return fail(
                    AcStatus::Error,
                    "the top-degree form drops below the tolerance; the degree is not stable",
                )
            }
            Err(e) => return fail_from(&e),
        };
        let locus = match eps_singular_locus(f, &ctx) {
            Ok(l) => l,
            Err(e) => return fail_from(&e),
        };
        let clusters = cluster_decomposition(&locus.points, &ctx);
        // A negative deficiency reports as a non-rational verdict, matching
        // the CLI, rather than surfacing the budget error.
        let (rational, deficiency) = match approxcurve::is_eps_rational(&clusters, d) {
            Ok(pair) => pair,
            Err(CurveError::GenusBudget(g)) => (false, g),
            Err(e) => return fail_from(&e),
        };
        let doc = locus_json(&locus, &clusters, deficiency, rational);
        let json = match serde_json::to_string_pretty(&doc) {
            Ok(s) => s,
            Err(e) => return fail(AcStatus::Error, &e.to_string()),
        };
        let analysis = AcAnalysis {
            json,
            rational,
            deficiency,
            cluster_count: clusters.len(),
        };
        unsafe { *out = Box::into_raw(Box::new(analysis)) };
        AcStatus::Ok
    })
}

/// Releases an analysis handle. NULL is accepted.
///
/// # Safety
/// `analysis` must be NULL or a live handle from `ac_analyze`.
#[no_mangle]
pub unsafe extern "C" fn ac_analysis_free(analysis: *mut AcAnalysis) {
    if !analysis.is_null() {
        drop(unsafe { Box::from_raw(analysis) });
    }
}

/// Full analysis report as pretty-printed JSON (keys `strata`, `clusters`,
/// `genus_deficiency`, `eps_rational`), or NULL for a null handle. Free the
/// result with `ac_string_free`.
///
/// # Safety
/// `analysis` must be NULL or a live handle from `ac_analyze`.
#[no_mangle]
pub unsafe extern "C" fn ac_analysis_json(analysis: *const AcAnalysis) -> *mut c_char {
    if analysis.is_null() {
        return std::ptr::null_mut();
    }
    let a = unsafe { &*analysis };
    into_c_string(a.json.clone())
}

/// Rationality verdict: 1 when the curve passed the test, 0 when it failed,
/// -1 for a null handle.
///
/// # Safety
/// `analysis` must be NULL or a live handle from `ac_analyze`.
#[no_mangle]
pub unsafe extern "C" fn ac_analysis_rational(analysis: *const AcAnalysis) -> i32 {
    if analysis.is_null() {
        return -1;
    }
    let a = unsafe { &*analysis };
    a.rational as i32
}

/// Genus deficiency of the analyzed curve; zero means rational. Returns the
/// minimum i64 for a null handle, a value no real deficiency takes.
///
/// # Safety
/// `analysis` must be NULL or a live handle from `ac_analyze`.
#[no_mangle]
pub unsafe extern "C" fn ac_analysis_deficiency(analysis: *const AcAnalysis) -> i64 {
    if analysis.is_null() {
        return i64::MIN;
    }
    let a = unsafe { &*analysis };
    a.deficiency
}

/// Number of singular clusters found; -1 for a null handle.
///
/// # Safety
/// `analysis` must be NULL or a live handle from `ac_analyze`.
#[no_mangle]
pub unsafe extern "C" fn ac_analysis_cluster_count(analysis: *const AcAnalysis) -> i64 {
    if analysis.is_null() {
        return -1;
    }
    let a = unsafe { &*analysis };
    a.cluster_count as i64
}

/// Computes the approximate rational parametrization of `curve` at
/// tolerance `eps` and writes a handle to `out`. `seed` drives the
/// randomized choices; equal seeds reproduce the run. Returns `NotRational`
/// when the curve fails the rationality test. Release the handle with
/// `ac_param_free`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_parametrize(
    curve: *const AcCurve,
    eps: f64,
    seed: u64,
    out: *mut *mut AcParam,
) -> AcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(AcStatus::Error, "null output pointer");
        }
        unsafe { *out = std::ptr::null_mut() };
        if curve.is_null() {
            return fail(AcStatus::Error, "null curve handle");
        }
        let f = unsafe { &(*curve).inner };
        match parametrize(f, eps, &SimplePointRule::Auto, seed, None) {
            Ok(par) => {
                unsafe { *out = Box::into_raw(Box::new(AcParam { inner: par })) };
                AcStatus::Ok
            }
            Err(e) => fail_from(&e),
        }
    })
}

/// Releases a parametrization handle. NULL is accepted.
///
/// # Safety
/// `param` must be NULL or a live handle from `ac_parametrize`.
#[no_mangle]
pub unsafe extern "C" fn ac_param_free(param: *mut AcParam) {
    if !param.is_null() {
        drop(unsafe { Box::from_raw(param) });
    }
}

/// Common degree of the numerators and denominator; -1 for a null handle.
///
/// # Safety
/// `param` must be NULL or a live handle from `ac_parametrize`.
#[no_mangle]
pub unsafe extern "C" fn ac_param_degree(param: *const AcParam) -> i32 {
    if param.is_null() {
        return -1;
    }
    let p = unsafe { &*param };
    p.inner.degree as i32
}

/// Parametrization report as pretty-printed JSON (coefficient lists `p1`,
/// `p2`, `q` and the run diagnostics), or NULL for a null handle. Free the
/// result with `ac_string_free`.
///
/// # Safety
/// `param` must be NULL or a live handle from `ac_parametrize`.
#[no_mangle]
pub unsafe extern "C" fn ac_param_json(param: *const AcParam) -> *mut c_char {
    if param.is_null() {
        return std::ptr::null_mut();
    }
    let p = unsafe { &*param };
    let doc = param_json(&p.inner);
    match serde_json::to_string_pretty(&doc) {
        Ok(s) => into_c_string(s),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Expands the parametrization back into an implicit polynomial and writes
/// its text form to `out_text`. Free the string with `ac_string_free`.
///
/// # Safety
/// `param` must be a live handle; `out_text` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_implicitize(
    param: *const AcParam,
    out_text: *mut *mut c_char,
) -> AcStatus {
    guarded(|| {
        if out_text.is_null() {
            return fail(AcStatus::Error, "null output pointer");
        }
        unsafe { *out_text = std::ptr::null_mut() };
        if param.is_null() {
            return fail(AcStatus::Error, "null parametrization handle");
        }
        let p = unsafe { &*param };
        match implicitize(&p.inner) {
            Ok(poly) => {
                unsafe { *out_text = into_c_string(poly.to_text()) };
                AcStatus::Ok
            }
            Err(e) => fail_from(&e),
        }
    })
}

/// Empirical distance from curve `f` to curve `c`: samples `f` on 2n random
/// integer lines in [a, b], measures each sample's distance to `c` over `r`
/// directions, and writes summary JSON (keys `mu`, `rho`, `lo`, `hi`,
/// `n_samples`) to `out_json`. Free the string with `ac_string_free`.
///
/// # Safety
/// `f` and `c` must be live handles; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_distance(
    f: *const AcCurve,
    c: *const AcCurve,
    a: i64,
    b: i64,
    n: usize,
    r: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> AcStatus {
    guarded(|| {
        if out_json.is_null() {
            return fail(AcStatus::Error, "null output pointer");
        }
        unsafe { *out_json = std::ptr::null_mut() };
        if f.is_null() || c.is_null() {
            return fail(AcStatus::Error, "null curve handle");
        }
        let fp = unsafe { &(*f).inner };
        let cp = unsafe { &(*c).inner };
        match distance_stats(fp, cp, a, b, n, r, seed) {
            Ok(report) => {
                let doc = distance_json(&report);
                match serde_json::to_string_pretty(&doc) {
                    Ok(s) => {
                        unsafe { *out_json = into_c_string(s) };
                        AcStatus::Ok
                    }
                    Err(e) => fail(AcStatus::Error, &e.to_string()),
                }
            }
            Err(e) => fail_from(&e),
        }
    })
}
