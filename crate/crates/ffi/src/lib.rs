//! C ABI over `radchar`.
//!
//! Every fallible call returns a [`RadcharStatus`]; on failure the message is
//! available from [`radchar_last_error`] on the same thread. Objects are
//! opaque handles released with their matching `_free`. Strings returned
//! through `char **` are owned by the caller and released with
//! [`radchar_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use radchar::census::{rank_census, HermVariant};
use radchar::charcensus::{census_table, DegreeCensus};
use radchar::orbitmethod::{class_count_brute, orbit_census};
use radchar::{Budget, Error, QPoly, RadicalParams, RadicalType, SymmetryClass};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadcharStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    BudgetExceeded = 3,
    MathError = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadcharType {
    C = 0,
    D = 1,
    U = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadcharClass {
    Symmetric = 0,
    SkewSymmetric = 1,
    SkewHermitian = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadcharVariant {
    Corrected = 0,
    Printed = 1,
}

/// A character-degree census table.
pub struct RadcharCensus(DegreeCensus);

/// A polynomial in `q` with integer coefficients.
pub struct RadcharPoly(QPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> RadcharStatus {
    match err {
        Error::EnumerationTooLarge { .. } => RadcharStatus::BudgetExceeded,
        Error::InvalidParams(_)
        | Error::OddPrimeRequired(_)
        | Error::OddPrimePowerRequired(_)
        | Error::UnsupportedExtensionDegree(_)
        | Error::FieldTooLarge(_)
        | Error::RankOutOfRange { .. }
        | Error::OddSkewRank => RadcharStatus::InvalidArgument,
        _ => RadcharStatus::MathError,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (RadcharStatus, String)>) -> RadcharStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RadcharStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RadcharStatus::Panic
        }
    }
}

fn lib<T>(r: radchar::Result<T>) -> Result<T, (RadcharStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (RadcharStatus, String) {
    (RadcharStatus::NullPointer, format!("{what} is null"))
}

fn params(kind: RadcharType, n: u32, d: u32) -> Result<RadicalParams, (RadcharStatus, String)> {
    let kind = match kind {
        RadcharType::C => RadicalType::C,
        RadcharType::D => RadicalType::D,
        RadcharType::U => RadicalType::U,
    };
    lib(RadicalParams::new(kind, n as usize, d as usize))
}

fn variant(v: RadcharVariant) -> HermVariant {
    match v {
        RadcharVariant::Corrected => HermVariant::Corrected,
        RadcharVariant::Printed => HermVariant::Printed,
    }
}

fn budget(b: u64) -> Result<Budget, (RadcharStatus, String)> {
    if b == 0 {
        return Ok(Budget::ENUMERATION);
    }
    lib(Budget::new(b))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (RadcharStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| (RadcharStatus::MathError, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call; never null.
#[no_mangle]
pub extern "C" fn radchar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn radchar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the census table of `R_u^{kind,d}` in rank `n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_new(
    kind: RadcharType,
    n: u32,
    d: u32,
    var: RadcharVariant,
    out: *mut *mut RadcharCensus,
) -> RadcharStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = lib(census_table(params(kind, n, d)?, variant(var)))?;
        *out = Box::into_raw(Box::new(RadcharCensus(table)));
        Ok(())
    })
}

/// # Safety
/// `c` must come from [`radchar_census_new`], or be null.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_free(c: *mut RadcharCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of rows; 0 for a null handle.
///
/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_len(c: *const RadcharCensus) -> usize {
    c.as_ref().map_or(0, |c| c.0.rows.len())
}

/// Whether `sum count * degree^2` equals the group order; -1 for null.
///
/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_sum_of_squares_holds(c: *const RadcharCensus) -> i32 {
    c.as_ref().map_or(-1, |c| c.0.sum_of_squares_holds as i32)
}

/// Rank `r` and exponent `e` of row `i`; the degree is `q^e` (C, D) or
/// `q^{2e}` (U).
///
/// # Safety
/// `c` must be a live handle; `r` and `e` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_row(
    c: *const RadcharCensus,
    i: usize,
    r: *mut u32,
    e: *mut u32,
) -> RadcharStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("census"))?;
        if r.is_null() || e.is_null() {
            return Err(null("out"));
        }
        let row = c.0.rows.get(i).ok_or((
            RadcharStatus::InvalidArgument,
            format!("row {i} out of range ({} rows)", c.0.rows.len()),
        ))?;
        *r = row.r as u32;
        *e = row.e as u32;
        Ok(())
    })
}

unsafe fn census_poly(
    c: *const RadcharCensus,
    i: usize,
    out: *mut *mut RadcharPoly,
    pick: fn(&radchar::charcensus::DegreeRow) -> &QPoly,
) -> RadcharStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("census"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let row = c.0.rows.get(i).ok_or((
            RadcharStatus::InvalidArgument,
            format!("row {i} out of range ({} rows)", c.0.rows.len()),
        ))?;
        *out = Box::into_raw(Box::new(RadcharPoly(pick(row).clone())));
        Ok(())
    })
}

/// Character count of row `i`, as a new polynomial handle.
///
/// # Safety
/// `c` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_count(
    c: *const RadcharCensus,
    i: usize,
    out: *mut *mut RadcharPoly,
) -> RadcharStatus {
    census_poly(c, i, out, |r| &r.count)
}

/// Character degree of row `i`, as a new polynomial handle.
///
/// # Safety
/// `c` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_degree(
    c: *const RadcharCensus,
    i: usize,
    out: *mut *mut RadcharPoly,
) -> RadcharStatus {
    census_poly(c, i, out, |r| &r.degree)
}

/// The whole table as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_census_json(
    c: *const RadcharCensus,
    out: *mut *mut c_char,
) -> RadcharStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("census"))?;
        let s =
            serde_json::to_string(&c.0).map_err(|e| (RadcharStatus::MathError, e.to_string()))?;
        write_string(out, s)
    })
}

/// Number of symmetric, skew-symmetric or skew-Hermitian `n x n` matrices of
/// rank `r`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_rank_census(
    class: RadcharClass,
    n: u32,
    r: u32,
    var: RadcharVariant,
    out: *mut *mut RadcharPoly,
) -> RadcharStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let class = match class {
            RadcharClass::Symmetric => SymmetryClass::Symmetric,
            RadcharClass::SkewSymmetric => SymmetryClass::SkewSymmetric,
            RadcharClass::SkewHermitian => SymmetryClass::SkewHermitian,
        };
        let p = lib(rank_census(class, n as usize, r as usize, variant(var)))?;
        *out = Box::into_raw(Box::new(RadcharPoly(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn radchar_poly_free(p: *mut RadcharPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of the polynomial, or -1 for zero or a null handle.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn radchar_poly_degree(p: *const RadcharPoly) -> i64 {
    p.as_ref()
        .and_then(|p| p.0.degree())
        .map_or(-1, |d| d as i64)
}

/// Human-readable form such as `q^3 - q^2`.
///
/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_poly_to_string(
    p: *const RadcharPoly,
    out: *mut *mut c_char,
) -> RadcharStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        write_string(out, p.0.to_string())
    })
}

/// Coefficients, constant term first, as a JSON array of decimal strings.
///
/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_poly_coeffs_json(
    p: *const RadcharPoly,
    out: *mut *mut c_char,
) -> RadcharStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        let s =
            serde_json::to_string(&p.0).map_err(|e| (RadcharStatus::MathError, e.to_string()))?;
        write_string(out, s)
    })
}

/// Value at `q` as a decimal string (values can exceed 64 bits).
///
/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_poly_eval(
    p: *const RadcharPoly,
    q: u64,
    out: *mut *mut c_char,
) -> RadcharStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        let v = lib(p.0.eval_u64(q))?;
        write_string(out, v.to_string())
    })
}

/// Brute-force orbit census at `q` as JSON. `budget` 0 means the default.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_orbit_census_json(
    kind: RadcharType,
    n: u32,
    d: u32,
    q: u64,
    budget_limit: u64,
    out: *mut *mut c_char,
) -> RadcharStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let oc = lib(orbit_census(params(kind, n, d)?, q, budget(budget_limit)?))?;
        let s =
            serde_json::to_string(&oc).map_err(|e| (RadcharStatus::MathError, e.to_string()))?;
        write_string(out, s)
    })
}

/// Number of conjugacy classes of the radical over `F_q`, by enumeration.
/// `budget` 0 means the default of 10^4 group elements.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn radchar_class_count(
    kind: RadcharType,
    n: u32,
    d: u32,
    q: u64,
    budget_limit: u64,
    out: *mut u64,
) -> RadcharStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let b = if budget_limit == 0 {
            Budget::GROUP
        } else {
            budget(budget_limit)?
        };
        *out = lib(class_count_brute(params(kind, n, d)?, q, b))?;
        Ok(())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn radchar_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => c"0",
        };
    VERSION.as_ptr()
}
