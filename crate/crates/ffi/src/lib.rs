//! C ABI over the engine: opaque handles, status codes and owned C strings.
//!
//! Fallible functions return an [`HaStatus`] and write results through out-pointers.
//! Strings handed out must be released with [`ha_string_free`]; handles with their
//! own `_free` function. After a failure, [`ha_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use heun_atlas::belyi::{builtin_catalog, verify_covering, CoveringRecord};
use heun_atlas::charcount::frobenius_count;
use heun_atlas::lemmas::nonexistence_search;
use heun_atlas::monodromy::count_triples;
use heun_atlas::patterns::{BranchingPattern, RestrictionType};
use heun_atlas::shell::{run_all, Profile};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    Unsupported = 5,
    Internal = 6,
}

/// Which checks [`ha_run_all`] performs.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaProfile {
    Quick = 0,
    Full = 1,
}

/// A parsed branching pattern.
pub struct HaPattern(BranchingPattern);

/// The bundled covering catalog.
pub struct HaCatalog(Vec<CoveringRecord>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: HaStatus, msg: impl Into<String>) -> HaStatus {
    set_error(msg);
    status
}

/// Run `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> HaStatus) -> HaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HaStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HaStatus> {
    if s.is_null() {
        return Err(fail(HaStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(HaStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> HaStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            HaStatus::Ok
        }
        Err(_) => fail(HaStatus::Internal, "string contains NUL"),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            return fail(HaStatus::NullPointer, "null argument");
        }
    };
}

/// Message for the last failed call on this thread, or null. Release with [`ha_string_free`].
#[no_mangle]
pub extern "C" fn ha_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ha_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse pattern text such as `[2]^6=[3]^4=9+1+1+1`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_pattern_parse(text: *const c_char, out: *mut *mut HaPattern) -> HaStatus {
    non_null!(out);
    guard(|| {
        let s = match read_str(text) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match BranchingPattern::parse(s) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(HaPattern(p)));
                HaStatus::Ok
            }
            Err(e) => fail(HaStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from [`ha_pattern_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ha_pattern_free(p: *mut HaPattern) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live pattern handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_pattern_degree(p: *const HaPattern, out: *mut u32) -> HaStatus {
    non_null!(p, out);
    *out = (*p).0.degree();
    HaStatus::Ok
}

/// Canonical text of the pattern.
///
/// # Safety
/// `p` must be a live pattern handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_pattern_to_string(p: *const HaPattern, out: *mut *mut c_char) -> HaStatus {
    non_null!(p, out);
    write_string(out, (*p).0.to_text())
}

/// Exhaustive triple count: connected orbits and the raw count (as decimal text).
///
/// # Safety
/// `p` must be a live pattern handle; `orbits` and `raw` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ha_count_triples(p: *const HaPattern, orbits: *mut usize, raw: *mut *mut c_char) -> HaStatus {
    non_null!(p, orbits, raw);
    guard(|| match count_triples(&(*p).0.partitions()) {
        Ok(c) => {
            *orbits = c.orbit_count;
            write_string(raw, c.raw_count.to_string())
        }
        Err(e) => fail(HaStatus::Unsupported, e.to_string()),
    })
}

/// Triple count from the character formula, as decimal text.
///
/// # Safety
/// `p` must be a live pattern handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_character_count(p: *const HaPattern, out: *mut *mut c_char) -> HaStatus {
    non_null!(p, out);
    guard(|| {
        let parts = (*p).0.partitions();
        match frobenius_count(&parts[0], &parts[1], &parts[2]) {
            Ok(n) => write_string(out, n.to_string()),
            Err(e) => fail(HaStatus::Unsupported, e.to_string()),
        }
    })
}

/// Non-existence search; `refuted` is set when a certificate is found and `json` holds the verdict.
///
/// # Safety
/// `p` must be a live pattern handle; `refuted` and `json` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ha_nonexistence(
    p: *const HaPattern,
    exhaustive: bool,
    refuted: *mut bool,
    json: *mut *mut c_char,
) -> HaStatus {
    non_null!(p, refuted, json);
    guard(|| {
        let pat = &(*p).0;
        let ty = match RestrictionType::new(pat.restriction_type()) {
            Ok(t) => t,
            Err(e) => return fail(HaStatus::Unsupported, e.to_string()),
        };
        let v = nonexistence_search(&ty, pat, exhaustive);
        *refuted = v.is_nonexistent();
        match serde_json::to_string(&v) {
            Ok(s) => write_string(json, s),
            Err(e) => fail(HaStatus::Internal, e.to_string()),
        }
    })
}

/// The bundled catalog.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_catalog_builtin(out: *mut *mut HaCatalog) -> HaStatus {
    non_null!(out);
    guard(|| {
        *out = Box::into_raw(Box::new(HaCatalog(builtin_catalog())));
        HaStatus::Ok
    })
}

/// # Safety
/// `c` must be null or a handle from [`ha_catalog_builtin`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ha_catalog_free(c: *mut HaCatalog) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live catalog handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_catalog_len(c: *const HaCatalog, out: *mut usize) -> HaStatus {
    non_null!(c, out);
    *out = (*c).0.len();
    HaStatus::Ok
}

unsafe fn record<'a>(c: *const HaCatalog, index: usize) -> Result<&'a CoveringRecord, HaStatus> {
    (&(*c).0).get(index).ok_or_else(|| fail(HaStatus::OutOfRange, format!("no catalog entry {index}")))
}

/// Id (`H1` ...) of entry `index`.
///
/// # Safety
/// `c` must be a live catalog handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_catalog_id(c: *const HaCatalog, index: usize, out: *mut *mut c_char) -> HaStatus {
    non_null!(c, out);
    match record(c, index) {
        Ok(r) => write_string(out, r.id.clone()),
        Err(e) => e,
    }
}

/// Whether entry `index` has the branching its pattern claims.
///
/// # Safety
/// `c` must be a live catalog handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ha_catalog_verify(c: *const HaCatalog, index: usize, passed: *mut bool) -> HaStatus {
    non_null!(c, passed);
    guard(|| match record(c, index) {
        Ok(r) => {
            let res = verify_covering(&r.map, &r.pattern);
            if let Err(e) = &res {
                set_error(format!("{}: {e}", r.id));
            }
            *passed = res.is_ok();
            HaStatus::Ok
        }
        Err(e) => e,
    })
}

/// Run the checks of `profile`; `json` receives the report and `failed` whether any check failed.
///
/// # Safety
/// `failed` and `json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ha_run_all(profile: HaProfile, failed: *mut bool, json: *mut *mut c_char) -> HaStatus {
    non_null!(failed, json);
    guard(|| {
        let profile = match profile {
            HaProfile::Quick => Profile::Quick,
            HaProfile::Full => Profile::Full,
        };
        match run_all(profile) {
            Ok(r) => {
                *failed = r.failed();
                write_string(json, r.to_json(false).to_string())
            }
            Err(e) => fail(HaStatus::Internal, e.to_string()),
        }
    })
}
