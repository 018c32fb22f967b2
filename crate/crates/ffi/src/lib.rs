//! C bindings for `motzeta`.
//!
//! Objects cross the boundary as opaque handles created by a constructor and
//! released by the matching `_free`. Every fallible call returns a
//! [`MotzetaStatus`] and writes its result through an out pointer; on
//! failure the message is available from [`motzeta_last_error_message`] on
//! the same thread. Strings handed out by the library are released with
//! [`motzeta_string_free`]. Structured results are JSON.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use motzeta::invariants::{compare, profile};
use motzeta::newton2d::resolve;
use motzeta::pipeline::{compute, from_resolution, Method, ZetaResult};
use motzeta::{Error, Germ, ResolutionData};

/// Result of every fallible call. The nonzero codes after `NULL_POINTER`
/// mirror the library's error names.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotzetaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    SyntaxError = 3,
    ConstantTerm = 4,
    ZeroPolynomial = 5,
    DimensionUnsupported = 6,
    Degenerate = 7,
    UnsupportedGerm = 8,
    NotDivisible = 9,
    InvalidData = 10,
    MissingCoverData = 11,
    UnsupportedCover = 12,
    OrderMismatch = 13,
    Io = 14,
    Panic = 15,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotzetaMethod {
    Direct = 0,
    Newton = 1,
    Auto = 2,
}

/// A parsed polynomial germ.
pub struct MotzetaGerm {
    inner: Germ,
}

/// Naive and sign zeta functions truncated at a fixed order.
pub struct MotzetaZeta {
    inner: ZetaResult,
}

/// Resolution data: divisors, multiplicities and strata.
pub struct MotzetaResolution {
    inner: ResolutionData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> MotzetaStatus {
    match e {
        Error::SyntaxError { .. } => MotzetaStatus::SyntaxError,
        Error::ConstantTerm => MotzetaStatus::ConstantTerm,
        Error::ZeroPolynomial => MotzetaStatus::ZeroPolynomial,
        Error::DimensionUnsupported(_) => MotzetaStatus::DimensionUnsupported,
        Error::Degenerate(_) => MotzetaStatus::Degenerate,
        Error::UnsupportedGerm(_) => MotzetaStatus::UnsupportedGerm,
        Error::NotDivisible(_) => MotzetaStatus::NotDivisible,
        Error::InvalidData(_) => MotzetaStatus::InvalidData,
        Error::MissingCoverData(_) => MotzetaStatus::MissingCoverData,
        Error::UnsupportedCover(_) => MotzetaStatus::UnsupportedCover,
        Error::OrderMismatch(..) => MotzetaStatus::OrderMismatch,
        Error::Io(_) => MotzetaStatus::Io,
    }
}

struct Failure(MotzetaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), format!("{}: {e}", e.name()))
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MotzetaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MotzetaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MotzetaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MotzetaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(MotzetaStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .expect("library strings have no nul bytes")
        .into_raw();
    Ok(())
}

fn method(m: MotzetaMethod) -> Method {
    match m {
        MotzetaMethod::Direct => Method::Direct,
        MotzetaMethod::Newton => Method::Newton,
        MotzetaMethod::Auto => Method::Auto,
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn motzeta_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code, e.g. `"SyntaxError"`.
#[no_mangle]
pub extern "C" fn motzeta_status_name(status: MotzetaStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        MotzetaStatus::Ok => b"Ok\0",
        MotzetaStatus::NullPointer => b"NullPointer\0",
        MotzetaStatus::InvalidUtf8 => b"InvalidUtf8\0",
        MotzetaStatus::SyntaxError => b"SyntaxError\0",
        MotzetaStatus::ConstantTerm => b"ConstantTerm\0",
        MotzetaStatus::ZeroPolynomial => b"ZeroPolynomial\0",
        MotzetaStatus::DimensionUnsupported => b"DimensionUnsupported\0",
        MotzetaStatus::Degenerate => b"Degenerate\0",
        MotzetaStatus::UnsupportedGerm => b"UnsupportedGerm\0",
        MotzetaStatus::NotDivisible => b"NotDivisible\0",
        MotzetaStatus::InvalidData => b"InvalidData\0",
        MotzetaStatus::MissingCoverData => b"MissingCoverData\0",
        MotzetaStatus::UnsupportedCover => b"UnsupportedCover\0",
        MotzetaStatus::OrderMismatch => b"OrderMismatch\0",
        MotzetaStatus::Io => b"Io\0",
        MotzetaStatus::Panic => b"Panic\0",
    };
    name.as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn motzeta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a germ such as `"x^2 + y^4"`. With `dim` zero the dimension is the
/// number of variables used.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_germ_parse(
    text: *const c_char,
    dim: usize,
    out: *mut *mut MotzetaGerm,
) -> MotzetaStatus {
    guard(|| {
        let t = c_str(text, "text")?;
        let g = if dim == 0 {
            Germ::parse(t)?
        } else {
            Germ::parse_with_dim(t, dim)?
        };
        put(out, MotzetaGerm { inner: g })
    })
}

/// # Safety
/// `germ` must come from [`motzeta_germ_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn motzeta_germ_free(germ: *mut MotzetaGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// # Safety
/// `germ` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn motzeta_germ_dim(germ: *const MotzetaGerm) -> usize {
    germ.as_ref().map_or(0, |g| g.inner.dim())
}

/// Canonical text of the germ.
///
/// # Safety
/// `germ` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_germ_to_string(
    germ: *const MotzetaGerm,
    out: *mut *mut c_char,
) -> MotzetaStatus {
    guard(|| put_string(out, handle(germ, "germ")?.inner.to_string()))
}

/// # Safety
/// `germ` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_zeta_compute(
    germ: *const MotzetaGerm,
    m: MotzetaMethod,
    order: usize,
    out: *mut *mut MotzetaZeta,
) -> MotzetaStatus {
    guard(|| {
        let z = compute(&handle(germ, "germ")?.inner, method(m), order)?;
        put(out, MotzetaZeta { inner: z })
    })
}

/// # Safety
/// `zeta` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn motzeta_zeta_free(zeta: *mut MotzetaZeta) {
    if !zeta.is_null() {
        drop(Box::from_raw(zeta));
    }
}

/// 1 when the sign series are present, 0 otherwise.
///
/// # Safety
/// `zeta` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn motzeta_zeta_has_sign_data(zeta: *const MotzetaZeta) -> c_int {
    zeta.as_ref()
        .map_or(0, |z| c_int::from(z.inner.plus.is_some()))
}

/// The series (and closed forms, when known) as JSON.
///
/// # Safety
/// `zeta` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_zeta_to_json(
    zeta: *const MotzetaZeta,
    out: *mut *mut c_char,
) -> MotzetaStatus {
    guard(|| {
        let z = handle(zeta, "zeta")?;
        put_string(
            out,
            serde_json::to_string(&z.inner).expect("zeta serializes"),
        )
    })
}

/// The invariant profile as JSON.
///
/// # Safety
/// `zeta` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_invariants_json(
    zeta: *const MotzetaZeta,
    out: *mut *mut c_char,
) -> MotzetaStatus {
    guard(|| {
        let z = &handle(zeta, "zeta")?.inner;
        let p = profile(&z.naive, z.plus.as_ref(), z.minus.as_ref())?;
        put_string(out, serde_json::to_string(&p).expect("profile serializes"))
    })
}

/// Compares two profiles; writes the JSON report and sets `distinguished`
/// to 1 when some invariant differs.
///
/// # Safety
/// `a` and `b` must be live handles; `distinguished` may be null; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_compare_json(
    a: *const MotzetaZeta,
    b: *const MotzetaZeta,
    distinguished: *mut c_int,
    out: *mut *mut c_char,
) -> MotzetaStatus {
    guard(|| {
        let (a, b) = (&handle(a, "a")?.inner, &handle(b, "b")?.inner);
        let pa = profile(&a.naive, a.plus.as_ref(), a.minus.as_ref())?;
        let pb = profile(&b.naive, b.plus.as_ref(), b.minus.as_ref())?;
        let report = compare(&pa, &pb)?;
        let witness = report.witness();
        let json = serde_json::json!({
            "order": report.order,
            "verdict": report.summary(),
            "witness_invariant": witness.map(|(w, _)| w),
            "witness_order": witness.map(|(_, n)| n),
            "entries": report.entries,
        });
        if !distinguished.is_null() {
            *distinguished = c_int::from(report.distinguished());
        }
        put_string(out, json.to_string())
    })
}

/// Resolution data of a nondegenerate two-variable germ.
///
/// # Safety
/// `germ` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_resolve(
    germ: *const MotzetaGerm,
    out: *mut *mut MotzetaResolution,
) -> MotzetaStatus {
    guard(|| {
        let r = resolve(&handle(germ, "germ")?.inner)?;
        put(out, MotzetaResolution { inner: r })
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_resolution_from_json(
    json: *const c_char,
    out: *mut *mut MotzetaResolution,
) -> MotzetaStatus {
    guard(|| {
        let r = ResolutionData::from_json(c_str(json, "json")?)?;
        put(out, MotzetaResolution { inner: r })
    })
}

/// # Safety
/// `res` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_resolution_to_json(
    res: *const MotzetaResolution,
    out: *mut *mut c_char,
) -> MotzetaStatus {
    guard(|| put_string(out, handle(res, "resolution")?.inner.to_json()))
}

/// Writes the violations found as a JSON array, empty when the data is
/// consistent, and their number to `count` when it is not null.
///
/// # Safety
/// `res` must be a live handle; `count` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_resolution_validate(
    res: *const MotzetaResolution,
    count: *mut usize,
    out: *mut *mut c_char,
) -> MotzetaStatus {
    guard(|| {
        let v = handle(res, "resolution")?.inner.validate();
        if !count.is_null() {
            *count = v.len();
        }
        put_string(
            out,
            serde_json::to_string(&v).expect("violations serialize"),
        )
    })
}

/// Evaluates resolution data into zeta functions.
///
/// # Safety
/// `res` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn motzeta_resolution_zeta(
    res: *const MotzetaResolution,
    order: usize,
    out: *mut *mut MotzetaZeta,
) -> MotzetaStatus {
    guard(|| {
        let z = from_resolution(&handle(res, "resolution")?.inner, order)?;
        put(out, MotzetaZeta { inner: z })
    })
}

/// # Safety
/// `res` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn motzeta_resolution_free(res: *mut MotzetaResolution) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}
