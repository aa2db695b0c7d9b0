//! C ABI over the workbench core.
//!
//! Conventions, uniform across every entry point:
//!
//! - every function returns a [`ThetaStatus`]; computed values come back
//!   through out-pointers which are written only on `Ok`
//! - partitions are opaque handles created by the `theta_partition_*`
//!   constructors and released with [`theta_partition_free`]
//! - returned strings are NUL-terminated UTF-8 owned by the caller;
//!   release them with [`theta_string_free`]. Structured reports come back
//!   as JSON text in the same format the CLI prints
//! - after any non-`Ok` status, [`theta_last_error_message`] returns a
//!   human-readable description of the failure on the calling thread
//!
//! Those conventions are the safety contract: callers must pass valid,
//! properly aligned pointers and must not free a handle twice.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use serde::Serialize;
use thetacover::charsum::LocalFieldSpec;
use thetacover::partitions::{
    conjectured_orbit, dimension_equation_check, dominance_compare, gk_dimension, sp_collapse,
    Dominance, Partition,
};
use thetacover::rat::rat_string;
use thetacover::whittaker::{
    beta_exponent, descent_summary, exponent_pipeline, special_value_rhs, SpecialValueOptions,
};
use thetacover::{suites, Error};

/// Result code of every FFI call. Mirrors the core error variants, with
/// two extra codes for failures that can only happen at the boundary.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidPartition = 3,
    DimensionMismatch = 4,
    SingularMatrix = 5,
    NotSymplectic = 6,
    InvalidParameter = 7,
    Unsupported = 8,
    ContractViolated = 9,
    Overflow = 10,
}

/// Dominance relation between two partitions of the same total.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaDominance {
    Equal = 0,
    Less = 1,
    Greater = 2,
    Incomparable = 3,
}

/// Opaque partition handle.
pub struct ThetaPartition(Partition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: Error) -> ThetaStatus {
    let status = match e {
        Error::InvalidPartition(_) => ThetaStatus::InvalidPartition,
        Error::DimensionMismatch(_) => ThetaStatus::DimensionMismatch,
        Error::SingularMatrix(_) => ThetaStatus::SingularMatrix,
        Error::NotSymplectic(_) => ThetaStatus::NotSymplectic,
        Error::InvalidParameter(_) => ThetaStatus::InvalidParameter,
        Error::Unsupported(_) => ThetaStatus::Unsupported,
        Error::ContractViolated(_) => ThetaStatus::ContractViolated,
        Error::Overflow(_) => ThetaStatus::Overflow,
    };
    set_error(e.to_string());
    status
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(format!("argument '{}' is null", stringify!($p)));
            return ThetaStatus::NullArgument;
        })+
    };
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> ThetaStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            clear_error();
            ThetaStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte".into());
            ThetaStatus::ContractViolated
        }
    }
}

unsafe fn put_json<T: Serialize>(out: *mut *mut c_char, value: &T) -> ThetaStatus {
    match serde_json::to_string(value) {
        Ok(text) => put_string(out, text),
        Err(e) => {
            set_error(format!("serialization failed: {e}"));
            ThetaStatus::ContractViolated
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ThetaStatus> {
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        ThetaStatus::InvalidUtf8
    })
}

fn field(p: u64, order: u64) -> Result<LocalFieldSpec, ThetaStatus> {
    LocalFieldSpec::new(p, order).map_err(fail)
}

/// Version of the underlying library, as a static string. Do not free.
#[no_mangle]
pub extern "C" fn theta_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL if the last
/// call succeeded. The caller owns the returned string.
#[no_mangle]
pub extern "C" fn theta_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn theta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a comma-separated partition, e.g. "7,1". Parts must be weakly
/// decreasing positive integers.
#[no_mangle]
pub unsafe extern "C" fn theta_partition_parse(
    text: *const c_char,
    out: *mut *mut ThetaPartition,
) -> ThetaStatus {
    nonnull!(text, out);
    let s = match read_str(text) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match s.parse::<Partition>() {
        Ok(p) => {
            *out = Box::into_raw(Box::new(ThetaPartition(p)));
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds a partition from an array of parts.
#[no_mangle]
pub unsafe extern "C" fn theta_partition_from_parts(
    parts: *const u64,
    len: usize,
    out: *mut *mut ThetaPartition,
) -> ThetaStatus {
    nonnull!(out);
    if len > 0 && parts.is_null() {
        set_error("argument 'parts' is null".into());
        return ThetaStatus::NullArgument;
    }
    let slice = if len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(parts, len)
    };
    match Partition::new(slice.to_vec()) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(ThetaPartition(p)));
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Releases a partition handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn theta_partition_free(p: *mut ThetaPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the partition as comma-separated text.
#[no_mangle]
pub unsafe extern "C" fn theta_partition_to_string(
    p: *const ThetaPartition,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(p, out);
    put_string(out, (*p).0.to_string())
}

#[no_mangle]
pub unsafe extern "C" fn theta_partition_total(
    p: *const ThetaPartition,
    out: *mut u64,
) -> ThetaStatus {
    nonnull!(p, out);
    *out = (*p).0.total();
    clear_error();
    ThetaStatus::Ok
}

/// True when every odd part occurs with even multiplicity.
#[no_mangle]
pub unsafe extern "C" fn theta_partition_is_symplectic(
    p: *const ThetaPartition,
    out: *mut bool,
) -> ThetaStatus {
    nonnull!(p, out);
    *out = (*p).0.is_symplectic();
    clear_error();
    ThetaStatus::Ok
}

/// Greatest symplectic partition dominated by the input (same even total).
#[no_mangle]
pub unsafe extern "C" fn theta_sp_collapse(
    p: *const ThetaPartition,
    out: *mut *mut ThetaPartition,
) -> ThetaStatus {
    nonnull!(p, out);
    match sp_collapse(&(*p).0) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(ThetaPartition(c)));
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Dominance order between two partitions of the same total.
#[no_mangle]
pub unsafe extern "C" fn theta_dominance(
    a: *const ThetaPartition,
    b: *const ThetaPartition,
    out: *mut ThetaDominance,
) -> ThetaStatus {
    nonnull!(a, b, out);
    match dominance_compare(&(*a).0, &(*b).0) {
        Ok(rel) => {
            *out = match rel {
                Dominance::Equal => ThetaDominance::Equal,
                Dominance::Less => ThetaDominance::Less,
                Dominance::Greater => ThetaDominance::Greater,
                Dominance::Incomparable => ThetaDominance::Incomparable,
            };
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Predicted wavefront partition of the degree-r theta representation of
/// the rank-n group; r must be odd.
#[no_mangle]
pub unsafe extern "C" fn theta_conjectured_orbit(
    n: u64,
    r: u64,
    out: *mut *mut ThetaPartition,
) -> ThetaStatus {
    nonnull!(out);
    match conjectured_orbit(n, r) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(ThetaPartition(p)));
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Half the dimension of the nilpotent orbit labeled by a symplectic
/// partition of 2n, as an exact rational string.
#[no_mangle]
pub unsafe extern "C" fn theta_gk_dimension(
    p: *const ThetaPartition,
    n: u64,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(p, out);
    match gk_dimension(&(*p).0, n) {
        Ok(v) => put_string(out, rat_string(&v)),
        Err(e) => fail(e),
    }
}

/// Orbit prediction plus the dimension-equation report, as JSON.
#[no_mangle]
pub unsafe extern "C" fn theta_dimension_check_json(
    n: u64,
    r: u64,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(out);
    match dimension_equation_check(n, r) {
        Ok(report) => put_json(out, &report),
        Err(e) => fail(e),
    }
}

/// Value of the order-`order` residue character at x, as an exponent of
/// the primitive root of unity.
#[no_mangle]
pub unsafe extern "C" fn theta_power_residue(
    p: u64,
    order: u64,
    x: i64,
    out: *mut u64,
) -> ThetaStatus {
    nonnull!(out);
    let f = match field(p, order) {
        Ok(f) => f,
        Err(status) => return status,
    };
    match f.power_residue(x) {
        Ok(v) => {
            *out = v;
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Tame Hilbert symbol of p^v1 u1 and p^v2 u2 as a root-of-unity exponent.
#[no_mangle]
pub unsafe extern "C" fn theta_tame_hilbert(
    p: u64,
    order: u64,
    v1: i64,
    u1: i64,
    v2: i64,
    u2: i64,
    out: *mut u64,
) -> ThetaStatus {
    nonnull!(out);
    let f = match field(p, order) {
        Ok(f) => f,
        Err(status) => return status,
    };
    match f.tame_hilbert(v1, u1, v2, u2) {
        Ok(v) => {
            *out = v;
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Character sum over units twisted by the t-th character power, as JSON
/// {value: {modulus, coefficients}, q_exp}.
#[no_mangle]
pub unsafe extern "C" fn theta_gauss_sum_json(
    p: u64,
    order: u64,
    t: i64,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(out);
    let f = match field(p, order) {
        Ok(f) => f,
        Err(status) => return status,
    };
    match f.gauss_sum(t) {
        Ok(v) => put_json(out, &v),
        Err(e) => fail(e),
    }
}

/// Unit-group integral at conductor exponent m, as JSON.
#[no_mangle]
pub unsafe extern "C" fn theta_unit_integral_json(
    p: u64,
    order: u64,
    m: u32,
    t: i64,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(out);
    let f = match field(p, order) {
        Ok(f) => f,
        Err(status) => return status,
    };
    match f.unit_integral(m, t) {
        Ok(v) => put_json(out, &v),
        Err(e) => fail(e),
    }
}

/// Whether the unit-group integral vanishes identically.
#[no_mangle]
pub unsafe extern "C" fn theta_unit_integral_is_zero(
    p: u64,
    order: u64,
    m: u32,
    t: i64,
    out: *mut bool,
) -> ThetaStatus {
    nonnull!(out);
    let f = match field(p, order) {
        Ok(f) => f,
        Err(status) => return status,
    };
    match f.unit_integral(m, t) {
        Ok(v) => {
            *out = v.is_zero();
            clear_error();
            ThetaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Boundary exponent of the descent integral at shell a, as an exact
/// rational string.
#[no_mangle]
pub unsafe extern "C" fn theta_beta_exponent(
    n: usize,
    r: u64,
    a: usize,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(out);
    match beta_exponent(n, r, a) {
        Ok(v) => put_string(out, rat_string(&v)),
        Err(e) => fail(e),
    }
}

/// Full descent table for the degree-r cover at rank n, as JSON.
#[no_mangle]
pub unsafe extern "C" fn theta_descent_summary_json(
    n: usize,
    r: u64,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(out);
    match descent_summary(n, r) {
        Ok(v) => put_json(out, &v),
        Err(e) => fail(e),
    }
}

/// Exponent assembly for the two-term special value at odd rank n, as JSON.
#[no_mangle]
pub unsafe extern "C" fn theta_pipeline_json(n: usize, out: *mut *mut c_char) -> ThetaStatus {
    nonnull!(out);
    match exponent_pipeline(n) {
        Ok(v) => put_json(out, &v),
        Err(e) => fail(e),
    }
}

/// Right-hand side of the special-value identity at torus depth (n1, n2),
/// as a JSON list of monomials. `witness_prime = 0` selects the default
/// (smallest prime congruent to 1 modulo n).
#[no_mangle]
pub unsafe extern "C" fn theta_special_value_json(
    n: usize,
    n1: u64,
    n2: u64,
    with_gauss_factor: bool,
    witness_prime: u64,
    out: *mut *mut c_char,
) -> ThetaStatus {
    nonnull!(out);
    let opts = SpecialValueOptions {
        with_gauss_factor,
        witness_prime: if witness_prime == 0 { None } else { Some(witness_prime) },
    };
    match special_value_rhs(n, n1, n2, &opts) {
        Ok(v) => put_json(out, &v),
        Err(e) => fail(e),
    }
}

/// Runs one verification suite (or all of them when `name` is NULL) and
/// returns the JSON report. `all_passed` is written on success.
#[no_mangle]
pub unsafe extern "C" fn theta_run_suite_json(
    name: *const c_char,
    out: *mut *mut c_char,
    all_passed: *mut bool,
) -> ThetaStatus {
    nonnull!(out, all_passed);
    let results = if name.is_null() {
        suites::run_all()
    } else {
        let s = match read_str(name) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match suites::run_suite(s) {
            Ok(r) => vec![r],
            Err(e) => return fail(e),
        }
    };
    *all_passed = results.iter().all(|s| s.all_passed());
    put_json(out, &results)
}
