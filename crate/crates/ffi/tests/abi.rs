use std::ffi::{c_char, CStr, CString};
use std::ptr;

use heun_atlas_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ha_string_free(s) };
    out
}

fn pattern(text: &str) -> *mut HaPattern {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ha_pattern_parse(c.as_ptr(), &mut p) }, HaStatus::Ok);
    p
}

#[test]
fn pattern_round_trip() {
    let p = pattern("9+1+1+1=[3]^4=[2]^6");
    let mut d = 0;
    assert_eq!(unsafe { ha_pattern_degree(p, &mut d) }, HaStatus::Ok);
    assert_eq!(d, 12);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ha_pattern_to_string(p, &mut s) }, HaStatus::Ok);
    assert_eq!(take(s), "[2]^6=[3]^4=9+1+1+1");
    unsafe { ha_pattern_free(p) };
}

#[test]
fn parse_errors_set_message() {
    let c = CString::new("2+1=3").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ha_pattern_parse(c.as_ptr(), &mut p) }, HaStatus::Parse);
    assert!(p.is_null());
    assert!(!take(ha_last_error()).is_empty());
    assert_eq!(unsafe { ha_pattern_parse(ptr::null(), &mut p) }, HaStatus::NullPointer);
}

#[test]
fn counts_agree() {
    let p = pattern("[2]^2+1=[5]=2+2+1");
    let mut orbits = 0;
    let mut raw = ptr::null_mut();
    assert_eq!(unsafe { ha_count_triples(p, &mut orbits, &mut raw) }, HaStatus::Ok);
    let mut chars = ptr::null_mut();
    assert_eq!(unsafe { ha_character_count(p, &mut chars) }, HaStatus::Ok);
    assert_eq!(orbits, 1);
    assert_eq!(take(raw), take(chars));
    unsafe { ha_pattern_free(p) };
}

#[test]
fn too_large_for_enumeration() {
    let p = pattern("[2]^12=[3]^8=10+6+4+2+1+1");
    let mut orbits = 0;
    let mut raw = ptr::null_mut();
    assert_eq!(unsafe { ha_count_triples(p, &mut orbits, &mut raw) }, HaStatus::Unsupported);
    unsafe { ha_pattern_free(p) };
}

#[test]
fn nonexistence_verdicts() {
    let p = pattern("[2]^6=[3]^4=7+3+1+1");
    let mut refuted = false;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ha_nonexistence(p, false, &mut refuted, &mut json) }, HaStatus::Ok);
    assert!(refuted);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["status"], "Nonexistent");
    unsafe { ha_pattern_free(p) };

    let p = pattern("[2]^6=[3]^4=9+1+1+1");
    assert_eq!(unsafe { ha_nonexistence(p, false, &mut refuted, &mut json) }, HaStatus::Ok);
    assert!(!refuted);
    take(json);
    unsafe { ha_pattern_free(p) };
}

#[test]
fn catalog_entries_verify() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { ha_catalog_builtin(&mut c) }, HaStatus::Ok);
    let mut n = 0;
    assert_eq!(unsafe { ha_catalog_len(c, &mut n) }, HaStatus::Ok);
    assert_eq!(n, 48);
    let mut id = ptr::null_mut();
    assert_eq!(unsafe { ha_catalog_id(c, 20, &mut id) }, HaStatus::Ok);
    assert_eq!(take(id), "H21");
    let mut passed = false;
    assert_eq!(unsafe { ha_catalog_verify(c, 20, &mut passed) }, HaStatus::Ok);
    assert!(passed);
    assert_eq!(unsafe { ha_catalog_verify(c, 48, &mut passed) }, HaStatus::OutOfRange);
    unsafe { ha_catalog_free(c) };
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/heun_atlas.h")).unwrap();
    for name in ["ha_pattern_parse", "ha_string_free", "ha_run_all", "HA_STATUS_NULL_POINTER", "typedef struct HaPattern HaPattern"] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", concat!(env!("CARGO_MANIFEST_DIR"), "/include/heun_atlas.h")])
        .status()
    else {
        return;
    };
    assert!(status.success());
}
