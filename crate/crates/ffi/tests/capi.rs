use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use charirr_ffi::*;

fn rootsys(name: &str) -> *mut CharirrRootSystem {
    let name = CString::new(name).unwrap();
    let mut rs = ptr::null_mut();
    let st = unsafe { charirr_rootsys_new(name.as_ptr(), &mut rs) };
    assert_eq!(st, CharirrStatus::Ok);
    assert!(!rs.is_null());
    rs
}

fn take_json(p: *mut std::ffi::c_char) -> serde_json::Value {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { charirr_string_free(p) };
    serde_json::from_str(&s).unwrap()
}

fn last_error() -> String {
    let p = charirr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn rank_and_weyl_order() {
    let rs = rootsys("G2");
    let (mut r, mut w) = (0usize, 0usize);
    unsafe {
        assert_eq!(charirr_rootsys_rank(rs, &mut r), CharirrStatus::Ok);
        assert_eq!(charirr_rootsys_weyl_order(rs, &mut w), CharirrStatus::Ok);
        charirr_rootsys_free(rs);
    }
    assert_eq!((r, w), (2, 12));
}

#[test]
fn standard_character_has_three_terms() {
    let rs = rootsys("A2");
    let coords = [1i64, 0];
    let mut out = ptr::null_mut();
    let st = unsafe { charirr_character_json(rs, coords.as_ptr(), 2, &mut out) };
    assert_eq!(st, CharirrStatus::Ok);
    let v = take_json(out);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["dimension"], "3");
    unsafe { charirr_rootsys_free(rs) };
}

#[test]
fn schur_sum_and_c_lambda() {
    let rs = rootsys("A2");
    let coords = [2i64, 1];
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(charirr_schur_sum_json(rs, coords.as_ptr(), 2, &mut out), CharirrStatus::Ok);
        assert_eq!(take_json(out).as_array().unwrap().len(), 6);
        assert_eq!(charirr_clambda_json(rs, coords.as_ptr(), 2, &mut out), CharirrStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["d_lambda"], 1);
        assert_eq!(v["C"].as_array().unwrap().len(), 3);
        assert_eq!(charirr_cfactor_json(rs, coords.as_ptr(), 2, 7, &mut out), CharirrStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["report"]["verdict"], "absolutely_irreducible");
        let mut n = 0usize;
        assert_eq!(charirr_absolute_factor_count(rs, coords.as_ptr(), 2, 7, &mut n), CharirrStatus::Ok);
        assert_eq!(n, 1);
        charirr_rootsys_free(rs);
    }
}

#[test]
fn obstruction_report() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(charirr_cyclo_obstruct_json(4, 6, 2, 400, &mut out), CharirrStatus::Ok);
        assert_eq!(take_json(out)["conclusion"], "contradiction_confirmed");
        assert_eq!(charirr_cyclo_obstruct_json(4, 8, 2, 400, &mut out), CharirrStatus::Ok);
        assert_eq!(take_json(out)["conclusion"], "no_obstruction");
        assert_eq!(
            charirr_cyclo_obstruct_json(4, 6, 3, 400, &mut out),
            CharirrStatus::InvalidArgument
        );
    }
    assert!(last_error().contains("divide"));
}

#[test]
fn error_codes() {
    let bad = CString::new("Q7").unwrap();
    let mut rs = ptr::null_mut();
    unsafe {
        assert_eq!(charirr_rootsys_new(bad.as_ptr(), &mut rs), CharirrStatus::InvalidArgument);
        assert!(rs.is_null());
        assert!(last_error().contains("Q7"));
        assert_eq!(charirr_rootsys_new(ptr::null(), &mut rs), CharirrStatus::NullPointer);

        let rs = rootsys("A2");
        let mut out = ptr::null_mut();
        let wrong_rank = [1i64, 1, 1];
        assert_eq!(
            charirr_character_json(rs, wrong_rank.as_ptr(), 3, &mut out),
            CharirrStatus::InvalidArgument
        );
        assert!(out.is_null());
        let coords = [1i64, 1];
        assert_eq!(
            charirr_character_json(ptr::null(), coords.as_ptr(), 2, &mut out),
            CharirrStatus::NullPointer
        );
        assert_eq!(charirr_rootsys_new(bad.as_ptr(), ptr::null_mut()), CharirrStatus::NullPointer);
        charirr_rootsys_free(rs);
        charirr_rootsys_free(ptr::null_mut());
        charirr_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/charirr.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "charirr_rootsys_new",
        "charirr_character_json",
        "charirr_cfactor_json",
        "charirr_absolute_factor_count",
        "charirr_cyclo_obstruct_json",
        "charirr_string_free",
        "CHARIRR_STATUS_OK",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler, skipping syntax check");
        return;
    };
    assert!(status.success());
}
