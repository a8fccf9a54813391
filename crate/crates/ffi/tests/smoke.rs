//! Drives the C entry points in-process: handle round-trips, the analysis
//! and parametrization paths on a known rational quartic, the non-rational
//! verdict, and the null/garbage error paths.

use std::ffi::{CStr, CString};
use std::ptr;

use approxcurve_ffi::*;

const QUARTIC: &str = "1.000065y^2+1.00000028y^3+y^4+1.000065xy-11.49999972xy^2+xy^3\
    +0.760065x^2+5.74000028x^2y+3.69x^2y^2-0.75999972x^3-3.12x^3y+0.19x^4+0.01x+0.01y";
const EPS: f64 = 0.01;

fn parse(text: &str) -> *mut AcCurve {
    let c_text = CString::new(text).unwrap();
    let mut curve = ptr::null_mut();
    let status = unsafe { ac_curve_parse(c_text.as_ptr(), &mut curve) };
    assert_eq!(status, AcStatus::Ok);
    assert!(!curve.is_null());
    curve
}

fn take_string(raw: *mut std::os::raw::c_char) -> String {
    assert!(!raw.is_null());
    let owned = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_owned();
    unsafe { ac_string_free(raw) };
    owned
}

#[test]
fn curve_round_trip() {
    let curve = parse(QUARTIC);
    assert_eq!(unsafe { ac_curve_degree(curve) }, 4);

    let text = take_string(unsafe { ac_curve_text(curve) });
    let reparsed = parse(&text);
    assert_eq!(unsafe { ac_curve_degree(reparsed) }, 4);

    unsafe {
        ac_curve_free(reparsed);
        ac_curve_free(curve);
    }
}

#[test]
fn analysis_reports_rational_quartic() {
    let curve = parse(QUARTIC);
    let mut analysis = ptr::null_mut();
    let status = unsafe { ac_analyze(curve, EPS, &mut analysis) };
    assert_eq!(status, AcStatus::Ok);
    assert!(!analysis.is_null());

    assert_eq!(unsafe { ac_analysis_rational(analysis) }, 1);
    assert_eq!(unsafe { ac_analysis_deficiency(analysis) }, 0);
    assert_eq!(unsafe { ac_analysis_cluster_count(analysis) }, 3);

    let json = take_string(unsafe { ac_analysis_json(analysis) });
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["eps_rational"], serde_json::Value::Bool(true));
    assert_eq!(doc["clusters"].as_array().unwrap().len(), 3);
    assert!(doc["strata"].is_array());

    unsafe {
        ac_analysis_free(analysis);
        ac_curve_free(curve);
    }
}

#[test]
fn parametrization_and_implicitization() {
    let curve = parse(QUARTIC);
    let mut param = ptr::null_mut();
    let status = unsafe { ac_parametrize(curve, EPS, 1, &mut param) };
    assert_eq!(status, AcStatus::Ok);
    assert!(!param.is_null());
    assert_eq!(unsafe { ac_param_degree(param) }, 4);

    let json = take_string(unsafe { ac_param_json(param) });
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["q"].as_array().unwrap().len(), 5);

    let mut text = ptr::null_mut();
    let status = unsafe { ac_implicitize(param, &mut text) };
    assert_eq!(status, AcStatus::Ok);
    let implicit = take_string(text);
    let back = parse(&implicit);
    assert_eq!(unsafe { ac_curve_degree(back) }, 4);

    // The implicitization stays near the input curve.
    let mut dist_json = ptr::null_mut();
    let status = unsafe { ac_distance(curve, back, -50, 50, 4, 4, 7, &mut dist_json) };
    assert_eq!(status, AcStatus::Ok);
    let dist = take_string(dist_json);
    let doc: serde_json::Value = serde_json::from_str(&dist).unwrap();
    let mu = doc["mu"].as_f64().unwrap();
    assert!(mu.is_finite() && (0.0..0.05).contains(&mu), "mu = {}", mu);

    unsafe {
        ac_curve_free(back);
        ac_param_free(param);
        ac_curve_free(curve);
    }
}

#[test]
fn non_rational_curve_gets_the_verdict_status() {
    // Smooth cubic: genus one, deficiency two.
    let curve = parse("x^3 + y^3 - 1");
    let mut param = ptr::null_mut();
    let status = unsafe { ac_parametrize(curve, 0.01, 1, &mut param) };
    assert_eq!(status, AcStatus::NotRational);
    assert!(param.is_null());
    let msg = unsafe { CStr::from_ptr(ac_last_error_message()) };
    assert!(msg.to_str().unwrap().contains("not rational"));

    let mut analysis = ptr::null_mut();
    let status = unsafe { ac_analyze(curve, 0.01, &mut analysis) };
    assert_eq!(status, AcStatus::Ok);
    assert_eq!(unsafe { ac_analysis_rational(analysis) }, 0);
    assert_eq!(unsafe { ac_analysis_deficiency(analysis) }, 2);

    unsafe {
        ac_analysis_free(analysis);
        ac_curve_free(curve);
    }
}

#[test]
fn parse_failure_sets_the_error_message() {
    let bad = CString::new("x^^2 +* y").unwrap();
    let mut curve = ptr::null_mut();
    let status = unsafe { ac_curve_parse(bad.as_ptr(), &mut curve) };
    assert_eq!(status, AcStatus::Error);
    assert!(curve.is_null());
    let msg = unsafe { CStr::from_ptr(ac_last_error_message()) };
    assert!(!msg.to_bytes().is_empty());
}

#[test]
fn null_arguments_are_rejected_not_dereferenced() {
    unsafe {
        assert_eq!(ac_curve_degree(ptr::null()), -1);
        assert!(ac_curve_text(ptr::null()).is_null());
        assert_eq!(ac_analysis_rational(ptr::null()), -1);
        assert_eq!(ac_analysis_deficiency(ptr::null()), i64::MIN);
        assert_eq!(ac_analysis_cluster_count(ptr::null()), -1);
        assert_eq!(ac_param_degree(ptr::null()), -1);
        assert!(ac_param_json(ptr::null()).is_null());

        let mut analysis = ptr::null_mut();
        assert_eq!(ac_analyze(ptr::null(), 0.01, &mut analysis), AcStatus::Error);
        let mut param = ptr::null_mut();
        assert_eq!(ac_parametrize(ptr::null(), 0.01, 1, &mut param), AcStatus::Error);

        let text = CString::new("x + y").unwrap();
        assert_eq!(ac_curve_parse(text.as_ptr(), ptr::null_mut()), AcStatus::Error);
        assert_eq!(ac_curve_parse(ptr::null(), &mut ptr::null_mut()), AcStatus::Error);

        // Free functions tolerate NULL.
        ac_curve_free(ptr::null_mut());
        ac_analysis_free(ptr::null_mut());
        ac_param_free(ptr::null_mut());
        ac_string_free(ptr::null_mut());
    }
}
