//! C ABI over ringlab.
//!
//! Rings are opaque `RlRing` handles from `rl_ring_parse`, released with
//! `rl_ring_free`. Every fallible call returns an `RlStatus`; on failure the
//! message is available from `rl_last_error` on the same thread. Structured
//! results are JSON report records returned as heap strings that the caller
//! frees with `rl_string_free`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ringlab::cli::{construct_record, reduce_record, ReportRecord};
use ringlab::{check_property, parse_matrix, parse_ring_spec, Error, PropertyId, RingDescriptor};

/// Opaque ring handle.
pub struct RlRing {
    desc: RingDescriptor,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    SemanticError = 4,
    NotAnElement = 5,
    BudgetExceeded = 6,
    InfiniteRing = 7,
    Unsupported = 8,
    /// A construction stopped because a hypothesis does not hold for the input.
    HypothesisFailed = 9,
    InvalidCertificate = 10,
    Panic = 11,
    Internal = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(RlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => RlStatus::ParseError,
            Error::Semantic(_) | Error::DimensionMismatch(_) => RlStatus::SemanticError,
            Error::NotAnElement(..) | Error::NotInS(_) => RlStatus::NotAnElement,
            Error::BudgetExceeded(_) => RlStatus::BudgetExceeded,
            Error::InfiniteRing(_) => RlStatus::InfiniteRing,
            Error::Unsupported(_) | Error::UnsupportedDescriptor(_) => RlStatus::Unsupported,
            Error::InvalidCertificate(_) => RlStatus::InvalidCertificate,
            Error::NotComaximal
            | Error::NoWitness(_)
            | Error::ConstructionFailed { .. }
            | Error::HypothesisFailed(_)
            | Error::NotUnit(_)
            | Error::ZeroInput
            | Error::NoDecomposition(_)
            | Error::NoFactorization(_)
            | Error::NotHermite { .. }
            | Error::NotReducible { .. } => RlStatus::HypothesisFailed,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RlStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            RlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(RlStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(RlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ring_arg<'a>(p: *const RlRing) -> Result<&'a RlRing, Failure> {
    p.as_ref().ok_or_else(|| Failure(RlStatus::NullArgument, "ring is NULL".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RlStatus::NullArgument, "output pointer is NULL".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(RlStatus::Internal, "result contains NUL".into()))?;
    write_out(out, c.into_raw())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next ringlab call on the same thread.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a ring spec such as `Mat(2,Zn(2))` into a new handle.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_parse(spec: *const c_char, out: *mut *mut RlRing) -> RlStatus {
    guard(|| {
        let desc = parse_ring_spec(str_arg(spec, "spec")?)?;
        write_out(out, Box::into_raw(Box::new(RlRing { desc })))
    })
}

/// Releases a handle from `rl_ring_parse`. NULL is ignored.
///
/// # Safety
/// `ring` must come from `rl_ring_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_free(ring: *mut RlRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Canonical spec text of the ring.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_to_string(ring: *const RlRing, out: *mut *mut c_char) -> RlStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        write_string(out, r.desc.to_string())
    })
}

/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_is_finite(ring: *const RlRing, out: *mut bool) -> RlStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        write_out(out, r.desc.is_finite())
    })
}

/// Number of elements; `RL_STATUS_INFINITE_RING` for infinite rings and
/// `RL_STATUS_UNSUPPORTED` when the order does not fit in 64 bits.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_order(ring: *const RlRing, out: *mut u64) -> RlStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        if !r.desc.is_finite() {
            return Err(Error::InfiniteRing(r.desc.to_string()).into());
        }
        let n = r
            .desc
            .order_u64()
            .ok_or_else(|| Failure(RlStatus::Unsupported, format!("order of {} exceeds 64 bits", r.desc)))?;
        write_out(out, n)
    })
}

/// Evaluates a property (`bezout`, `unit-sr1`, ...) and returns the report
/// record as JSON. An exhausted budget is still `RL_STATUS_OK`; the record
/// then has verdict `unknown`.
///
/// # Safety
/// `ring` must be a live handle, `property` a NUL-terminated string and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_check(
    ring: *const RlRing,
    property: *const c_char,
    budget: u64,
    out_json: *mut *mut c_char,
) -> RlStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let p: PropertyId = str_arg(property, "property")?.parse()?;
        let v = check_property(&r.desc, p, budget)?;
        write_string(out_json, ReportRecord::from_verdict(&v, 0.0).to_json())
    })
}

/// Diagonal reduction of a matrix literal such as `[[2,4],[6,8]]`.
///
/// # Safety
/// `ring` must be a live handle, `matrix` a NUL-terminated string and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_reduce(ring: *const RlRing, matrix: *const c_char, out_json: *mut *mut c_char) -> RlStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let a = parse_matrix(&r.desc, str_arg(matrix, "matrix")?)?;
        write_string(out_json, reduce_record(&r.desc, &a)?.to_json())
    })
}

/// Runs a construction (`theorem1`, `prop1`, `prop2`, `prop4`, `prop5`) on
/// comma-separated element literals. A violated hypothesis gives
/// `RL_STATUS_HYPOTHESIS_FAILED` and no output.
///
/// # Safety
/// `ring` must be a live handle, `which` and `args` NUL-terminated strings
/// and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_construct(
    ring: *const RlRing,
    which: *const c_char,
    args: *const c_char,
    out_json: *mut *mut c_char,
) -> RlStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let (record, failure) = construct_record(&r.desc, str_arg(which, "which")?, str_arg(args, "args")?)?;
        if let Some(e) = failure {
            return Err(e.into());
        }
        write_string(out_json, record.to_json())
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
