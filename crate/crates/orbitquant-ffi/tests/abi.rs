use std::ffi::{c_char, CStr, CString};
use std::ptr;

use orbitquant_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    oq_string_free(s);
    v
}

unsafe fn last_error() -> String {
    let p = oq_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn rank_one(r: &str, opposite: bool) -> *mut OqSpec {
    let mut spec = ptr::null_mut();
    assert_eq!(oq_spec_type_a(1, c(r).as_ptr(), opposite, &mut spec), OqStatus::Ok);
    spec
}

#[test]
fn twist_handle_round_trip() {
    unsafe {
        let spec = rank_one("3", false);
        let mut twist = ptr::null_mut();
        assert_eq!(oq_twist_build(spec, 3, &mut twist), OqStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(oq_twist_to_json(twist, &mut out), OqStatus::Ok);
        let v = take(out);
        assert_eq!(v["twist"]["max_grade"], 3);
        assert_eq!(v["poles"].as_array().unwrap().len(), 2);
        oq_twist_free(twist);
        oq_spec_free(spec);
    }
}

#[test]
fn pole_set_and_verify() {
    unsafe {
        let spec = rank_one("1", false);
        let mut out = ptr::null_mut();
        assert_eq!(oq_pole_set_json(spec, 4, &mut out), OqStatus::Ok);
        assert_eq!(take(out).as_array().unwrap().len(), 3);
        let opts = c(r#"{"grade": 4}"#);
        assert_eq!(oq_verify_json(spec, c("closedform").as_ptr(), opts.as_ptr(), &mut out), OqStatus::Ok);
        assert_eq!(take(out)["pass"], true);
        assert_eq!(oq_verify_json(spec, c("kks").as_ptr(), ptr::null(), &mut out), OqStatus::Ok);
        assert_eq!(take(out)["pass"], true);
        oq_spec_free(spec);
    }
}

#[test]
fn star_of_units() {
    unsafe {
        let spec = rank_one("1", false);
        let one = c(r#"{"vars": ["R_0_0", "R_0_1", "R_1_0", "R_1_1"], "terms": [[[0, 0, 0, 0], {"num": [[0, {"re": "1", "im": "0"}]], "den": [[0, {"re": "1", "im": "0"}]]}]]}"#);
        let mut out = ptr::null_mut();
        let opts = c(r#"{"points": 2, "hbar": "1/3"}"#);
        let status = oq_star_json(spec, one.as_ptr(), one.as_ptr(), opts.as_ptr(), &mut out);
        assert_eq!(status, OqStatus::Ok, "{}", last_error());
        let v = take(out);
        assert_eq!(v["values"].as_array().unwrap().len(), 2);
        assert_eq!(v["hbar"], "1/3");
        oq_spec_free(spec);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(oq_spec_type_a(1, c("0").as_ptr(), false, &mut spec), OqStatus::InvalidInput);
        assert!(last_error().contains("nonzero"));
        assert_eq!(oq_spec_type_a(1, ptr::null(), false, &mut spec), OqStatus::NullPointer);
        assert_eq!(oq_spec_from_json(c("{").as_ptr(), &mut spec), OqStatus::InvalidInput);
        let bytes = [0xffu8, 0];
        assert_eq!(oq_spec_from_json(bytes.as_ptr() as *const c_char, &mut spec), OqStatus::InvalidUtf8);

        let spec = rank_one("1", false);
        let mut out = ptr::null_mut();
        assert_eq!(oq_verify_json(spec, c("nonsense").as_ptr(), ptr::null(), &mut out), OqStatus::InvalidInput);
        let bad = c(r#"{"colour": 1}"#);
        assert_eq!(oq_twist_json(spec, bad.as_ptr(), &mut out), OqStatus::InvalidInput);
        assert!(last_error().contains("colour"));
        let at_pole = c(r#"{"grade": 2, "hbar": "1"}"#);
        let x = c(r#"{"vars": ["R_0_0", "R_0_1", "R_1_0", "R_1_1"], "terms": [[[0, 1, 0, 0], {"num": [[0, {"re": "1", "im": "0"}]], "den": [[0, {"re": "1", "im": "0"}]]}]]}"#);
        assert_eq!(oq_star_json(spec, x.as_ptr(), x.as_ptr(), at_pole.as_ptr(), &mut out), OqStatus::PoleHit);
        assert_eq!(oq_twist_build(ptr::null(), 1, ptr::null_mut()), OqStatus::NullPointer);
        oq_spec_free(spec);
        oq_spec_free(ptr::null_mut());
        oq_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(oq_spec_type_a(1, ptr::null(), false, &mut spec), OqStatus::NullPointer);
        let spec = rank_one("2", true);
        assert!(oq_last_error_message().is_null());
        oq_spec_free(spec);
    }
}
