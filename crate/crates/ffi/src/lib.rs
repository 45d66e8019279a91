//! C interface to `charirr`.
//!
//! Root systems are passed as opaque handles. Results are returned as
//! NUL-terminated JSON strings owned by the library; release them with
//! `charirr_string_free`. Every function returns a `CharirrStatus`; on
//! failure `charirr_last_error` describes the problem on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use charirr::cyclotomic::arith_obstruction_report;
use charirr::error::Error;
use charirr::harness;
use charirr::polyfactor::{self, laurent_to_poly, AbsConfig, FactorConfig};
use charirr::rootsys::RootSystem;
use charirr::schurweyl::{big_d_and_c, schur_weyl_sum};
use charirr::weight::Weight;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharirrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    /// A configured size or degree cap was exceeded.
    CapExceeded = 4,
    /// The computation failed (for example an exact division left a remainder).
    ComputationFailed = 5,
    Panic = 6,
}

/// Opaque root system handle.
pub struct CharirrRootSystem {
    inner: Arc<RootSystem>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> CharirrStatus {
    match e {
        Error::WeylGroupTooLarge { .. }
        | Error::DegreeBoundExceeded { .. }
        | Error::ConductorCap(..) => CharirrStatus::CapExceeded,
        Error::InexactDivision(_)
        | Error::NegativeMultiplicity(..)
        | Error::Internal(_)
        | Error::SpecializationsDisagree { .. }
        | Error::NoAdmissibleSpecialization(_)
        | Error::Io(_) => CharirrStatus::ComputationFailed,
        _ => CharirrStatus::InvalidArgument,
    }
}

enum Failure {
    Status(CharirrStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Status(CharirrStatus::ComputationFailed, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CharirrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CharirrStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CharirrStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(CharirrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(CharirrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_rs<'a>(rs: *const CharirrRootSystem) -> Result<&'a Arc<RootSystem>, Failure> {
    rs.as_ref().map(|h| &h.inner).ok_or_else(|| null("root system"))
}

unsafe fn read_weight(coords: *const i64, len: usize) -> Result<Weight, Failure> {
    if coords.is_null() && len > 0 {
        return Err(null("coords"));
    }
    let slice = if len == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(coords, len)
    };
    Ok(Weight::new(slice.iter().copied()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| {
        Failure::Status(CharirrStatus::ComputationFailed, "output contains NUL".into())
    })?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn charirr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn charirr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a root system from a name such as `"A2"` or `"G2"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charirr_rootsys_new(
    name: *const c_char,
    out: *mut *mut CharirrRootSystem,
) -> CharirrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(name, "name")?;
        let rs = RootSystem::parse(name)?;
        *out = Box::into_raw(Box::new(CharirrRootSystem { inner: Arc::new(rs) }));
        Ok(())
    })
}

/// # Safety
/// `rs` must come from `charirr_rootsys_new` and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn charirr_rootsys_free(rs: *mut CharirrRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// # Safety
/// `rs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charirr_rootsys_rank(
    rs: *const CharirrRootSystem,
    out: *mut usize,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = rs.rank();
        Ok(())
    })
}

/// Order of the Weyl group.
///
/// # Safety
/// `rs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charirr_rootsys_weyl_order(
    rs: *const CharirrRootSystem,
    out: *mut usize,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = rs.weyl().len();
        Ok(())
    })
}

/// Character of the irreducible representation with highest weight `coords`
/// as JSON: `{"rs", "highest_weight", "dimension", "terms"}`.
///
/// # Safety
/// `coords` must point to `len` integers; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charirr_character_json(
    rs: *const CharirrRootSystem,
    coords: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        let hw = read_weight(coords, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = harness::character_output(rs, &hw)?;
        write_string(out, serde_json::to_string(&v)?)
    })
}

/// Alternating sum `S(λ)` as a JSON list of `{"coords", "coeff"}` terms.
///
/// # Safety
/// As for `charirr_character_json`.
#[no_mangle]
pub unsafe extern "C" fn charirr_schur_sum_json(
    rs: *const CharirrRootSystem,
    coords: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        let lambda = read_weight(coords, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = schur_weyl_sum(rs, &lambda)?;
        write_string(out, serde_json::to_string(&s.records())?)
    })
}

/// `D(λ)` and `C(λ)` with the gcd invariants as JSON.
///
/// # Safety
/// As for `charirr_character_json`.
#[no_mangle]
pub unsafe extern "C" fn charirr_clambda_json(
    rs: *const CharirrRootSystem,
    coords: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        let lambda = read_weight(coords, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let res = big_d_and_c(rs, &lambda)?;
        write_string(out, serde_json::to_string(&res.to_json())?)
    })
}

/// `C(λ)` with its full factor report as JSON. The polynomial uses ambient
/// coordinates for type A and fundamental-weight coordinates otherwise.
///
/// # Safety
/// As for `charirr_character_json`.
#[no_mangle]
pub unsafe extern "C" fn charirr_cfactor_json(
    rs: *const CharirrRootSystem,
    coords: *const i64,
    len: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        let lambda = read_weight(coords, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mut cfg = FactorConfig::default();
        cfg.abs.gao.seed = seed;
        let v = harness::cfactor(rs, &lambda, None, &cfg)?;
        write_string(out, serde_json::to_string(&v)?)
    })
}

/// Number of absolutely irreducible factors of `C(λ)`.
///
/// # Safety
/// `coords` must point to `len` integers; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charirr_absolute_factor_count(
    rs: *const CharirrRootSystem,
    coords: *const i64,
    len: usize,
    seed: u64,
    out: *mut usize,
) -> CharirrStatus {
    guard(|| {
        let rs = read_rs(rs)?;
        let lambda = read_weight(coords, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let res = big_d_and_c(rs, &lambda)?;
        let p = laurent_to_poly(&res.c, harness::default_basis(rs))?;
        let mut cfg = AbsConfig::default();
        cfg.gao.seed = seed;
        *out = polyfactor::absolute_factor_count_with(&p, &cfg)?.count;
        Ok(())
    })
}

/// Cyclotomic obstruction report for `(e, f, d)` as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charirr_cyclo_obstruct_json(
    e: u64,
    f: u64,
    d: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> CharirrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = arith_obstruction_report(e, f, d, cap)?;
        write_string(out, serde_json::to_string(&r)?)
    })
}
