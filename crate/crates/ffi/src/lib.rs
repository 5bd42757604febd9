//! C ABI for the `qlghp` library.
//!
//! Objects cross the boundary as opaque handles created by `*_new` or
//! `qlghp_eval` and released by the matching `*_free`. Every fallible call
//! returns a [`QlghpStatus`]; on failure a description is available from
//! [`qlghp_last_error`] on the same thread. Strings returned to the caller are
//! owned by the caller and released with [`qlghp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qlghp::cli::{parse_family, poly_json};
use qlghp::identities::{build_sides, CaseParams, IdentityId};
use qlghp::qarith::parse_rational;
use qlghp::{Error, MPoly, QContext};

/// Result codes of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlghpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed input text: rational, family expression, tag or parameters.
    ParseError = 2,
    /// A vanishing q-number or other arithmetic failure.
    ArithmeticError = 3,
    /// Well-formed input outside the supported range.
    InvalidArgument = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Exact evaluation context at a fixed rational `q`.
pub struct QlghpContext {
    ctx: QContext,
}

/// A polynomial with rational coefficients.
pub struct QlghpPoly {
    poly: MPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: QlghpStatus, message: impl Into<String>) -> QlghpStatus {
    set_error(message);
    status
}

fn status_of(e: &Error) -> QlghpStatus {
    match e {
        Error::Parse(_) => QlghpStatus::ParseError,
        Error::InvalidArgument(_) | Error::OrderExceeded { .. } | Error::MissingBinding(_) => {
            QlghpStatus::InvalidArgument
        }
        _ if e.is_arithmetic() => QlghpStatus::ArithmeticError,
        _ => QlghpStatus::InvalidArgument,
    }
}

fn from_error(e: &Error) -> QlghpStatus {
    fail(status_of(e), e.to_string())
}

/// Runs `body`, converting a panic into [`QlghpStatus::Panic`].
fn guard(body: impl FnOnce() -> QlghpStatus) -> QlghpStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(QlghpStatus::Panic, "internal panic"))
}

/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QlghpStatus> {
    if s.is_null() {
        return Err(fail(QlghpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(QlghpStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c_string(text: String, out: *mut *mut c_char) -> QlghpStatus {
    match CString::new(text) {
        Ok(s) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = s.into_raw() };
            QlghpStatus::Ok
        }
        Err(_) => fail(QlghpStatus::Panic, "output contained a nul byte"),
    }
}

/// The most recent error message on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qlghp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn qlghp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a context for `q` given as `"a/b"` or an integer.
///
/// # Safety
/// `q` is a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qlghp_context_new(q: *const c_char, out: *mut *mut QlghpContext) -> QlghpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QlghpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(q) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_rational(text) {
            Ok(q) => {
                *out = Box::into_raw(Box::new(QlghpContext { ctx: QContext::new(q) }));
                QlghpStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `ctx` is null or a handle from [`qlghp_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qlghp_context_free(ctx: *mut QlghpContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Expands a family expression such as `"LH(2,2,2)"` at the context's `q`.
///
/// # Safety
/// `ctx` is a live context handle, `expr` a valid nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qlghp_eval(
    ctx: *const QlghpContext,
    expr: *const c_char,
    out: *mut *mut QlghpPoly,
) -> QlghpStatus {
    guard(|| {
        if ctx.is_null() || out.is_null() {
            return fail(QlghpStatus::NullPointer, "null context or output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match parse_family(text) {
            Ok(p) => p,
            Err(e) => return fail(QlghpStatus::ParseError, e.render(text)),
        };
        match parsed.spec.build(&(*ctx).ctx) {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(QlghpPoly { poly }));
                QlghpStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `poly` is null or a handle from [`qlghp_eval`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qlghp_poly_free(poly: *mut QlghpPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of nonzero terms; zero for a null handle.
///
/// # Safety
/// `poly` is null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn qlghp_poly_term_count(poly: *const QlghpPoly) -> usize {
    if poly.is_null() {
        return 0;
    }
    (*poly).poly.len()
}

/// Whether two polynomials are equal; false if either handle is null.
///
/// # Safety
/// Each argument is null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn qlghp_poly_equal(a: *const QlghpPoly, b: *const QlghpPoly) -> bool {
    !a.is_null() && !b.is_null() && (*a).poly == (*b).poly
}

/// Output formats of [`qlghp_poly_render`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlghpFormat {
    Text = 0,
    Json = 1,
    Latex = 2,
}

/// Renders a polynomial into a newly allocated string.
///
/// # Safety
/// `poly` is a live polynomial handle and `out` a valid pointer. The string
/// written to `out` must be released with [`qlghp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qlghp_poly_render(
    poly: *const QlghpPoly,
    format: QlghpFormat,
    out: *mut *mut c_char,
) -> QlghpStatus {
    guard(|| {
        if poly.is_null() || out.is_null() {
            return fail(QlghpStatus::NullPointer, "null polynomial or output pointer");
        }
        *out = ptr::null_mut();
        let p = &(*poly).poly;
        let text = match format {
            QlghpFormat::Text => p.to_string(),
            QlghpFormat::Json => poly_json(p).to_string(),
            QlghpFormat::Latex => p.to_latex(),
        };
        into_c_string(text, out)
    })
}

/// # Safety
/// `s` is null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qlghp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"k=1 l=2 m=2"` (spaces or commas) into parameters of `id`.
fn parse_params(id: IdentityId, text: &str) -> Result<CaseParams, QlghpStatus> {
    let mut params = CaseParams::default();
    for item in text.split([' ', ',']).filter(|s| !s.is_empty()) {
        let Some((name, value)) = item.split_once('=') else {
            return Err(fail(QlghpStatus::ParseError, format!("expected name=value, found `{item}`")));
        };
        let Some(&param) = id.params().iter().find(|p| p.name() == name) else {
            return Err(fail(QlghpStatus::ParseError, format!("{id} has no parameter `{name}`")));
        };
        let value = value
            .parse::<u64>()
            .map_err(|_| fail(QlghpStatus::ParseError, format!("invalid value `{value}` for `{name}`")))?;
        if value > u64::from(u32::MAX) {
            return Err(fail(QlghpStatus::InvalidArgument, format!("value of `{name}` too large")));
        }
        params.set(param, value);
    }
    Ok(params)
}

/// Checks one instance of a catalog identity at the context's `q`, writing
/// whether both sides agree to `passed`.
///
/// # Safety
/// `ctx` is a live context handle, `tag` and `params` valid nul-terminated
/// strings and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qlghp_verify(
    ctx: *const QlghpContext,
    tag: *const c_char,
    params: *const c_char,
    passed: *mut bool,
) -> QlghpStatus {
    guard(|| {
        if ctx.is_null() || passed.is_null() {
            return fail(QlghpStatus::NullPointer, "null context or output pointer");
        }
        *passed = false;
        let (tag, params) = match (read_str(tag), read_str(params)) {
            (Ok(t), Ok(p)) => (t, p),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let id = match tag.parse::<IdentityId>() {
            Ok(id) => id,
            Err(e) => return from_error(&e),
        };
        let params = match parse_params(id, params) {
            Ok(p) => p,
            Err(status) => return status,
        };
        match build_sides(&(*ctx).ctx, id, &params) {
            Ok(sides) => {
                *passed = sides.lhs == sides.rhs;
                QlghpStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}
