//! C interface to palg-core.
//!
//! Algebras and elements are opaque heap handles released with their
//! `_free` function. Every call returns a `PalgStatus`; on failure
//! `palg_last_error` describes what went wrong. Strings handed out by the
//! library are released with `palg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use palg_core::cli;
use palg_core::error::Error;
use palg_core::field::FieldDescriptor;

mod any;

pub use any::{AnyAlgebra, AnyElement};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidPrime = 4,
    InvalidSlot = 5,
    DivisionByZero = 6,
    /// The element is a zero divisor; the message carries a witness.
    NotInvertible = 7,
    Mismatch = 8,
    PrecisionExhausted = 9,
    /// Any other mathematical failure.
    MathFailure = 10,
    /// A report was produced but some verification line failed.
    ChecksFailed = 11,
    Usage = 12,
    Panic = 13,
}

/// Opaque symbol algebra `[alpha, beta)_p`.
pub struct PalgAlgebra {
    inner: AnyAlgebra,
}

/// Opaque element of a `PalgAlgebra`. Holds its own reference to the algebra.
pub struct PalgElement {
    inner: AnyElement,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PalgStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownSymbol(_) => PalgStatus::Syntax,
        Error::InvalidPrime(_) => PalgStatus::InvalidPrime,
        Error::InvalidSlot(_) => PalgStatus::InvalidSlot,
        Error::DivisionByZero | Error::ZeroElement => PalgStatus::DivisionByZero,
        Error::NotInvertible { .. } => PalgStatus::NotInvertible,
        Error::FieldMismatch(_) => PalgStatus::Mismatch,
        Error::PrecisionExhausted(_) => PalgStatus::PrecisionExhausted,
        _ => PalgStatus::MathFailure,
    }
}

struct Fail(PalgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PalgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PalgStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(PalgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(PalgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(PalgStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PalgStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PalgStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(|_| Fail(PalgStatus::MathFailure, "string contains NUL".into()))?.into_raw();
    Ok(())
}

/// Creates `[alpha, beta)_p`. `laurent_precision = 0` selects F_p(a, b);
/// a positive value selects F_p((a))((b)) with that exponent window.
///
/// # Safety
/// `alpha` and `beta` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_algebra_new(
    p: u64,
    alpha: *const c_char,
    beta: *const c_char,
    laurent_precision: u32,
    out: *mut *mut PalgAlgebra,
) -> PalgStatus {
    guard(|| {
        let (alpha, beta) = (text(alpha, "alpha")?, text(beta, "beta")?);
        let field = match laurent_precision {
            0 => FieldDescriptor::rational(p)?,
            n => FieldDescriptor::laurent(p, n)?,
        };
        store(out, PalgAlgebra { inner: AnyAlgebra::new(p, alpha, beta, field)? })
    })
}

/// # Safety
/// `alg` must come from `palg_algebra_new` and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn palg_algebra_free(alg: *mut PalgAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Writes `[alpha, beta)_p` as a new string.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_algebra_to_string(alg: *const PalgAlgebra, out: *mut *mut c_char) -> PalgStatus {
    guard(|| store_string(out, deref(alg, "algebra")?.inner.to_string()))
}

/// Parses an element expression in `x`, `y`, `a`, `b`.
///
/// # Safety
/// `alg` must be a live handle, `src` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_parse(alg: *const PalgAlgebra, src: *const c_char, out: *mut *mut PalgElement) -> PalgStatus {
    guard(|| {
        let alg = deref(alg, "algebra")?;
        store(out, PalgElement { inner: alg.inner.parse(text(src, "expression")?)? })
    })
}

/// # Safety
/// `el` must come from this library and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn palg_element_free(el: *mut PalgElement) {
    if !el.is_null() {
        drop(Box::from_raw(el));
    }
}

unsafe fn binary(
    a: *const PalgElement,
    b: *const PalgElement,
    out: *mut *mut PalgElement,
    op: fn(&AnyElement, &AnyElement) -> palg_core::error::Result<AnyElement>,
) -> PalgStatus {
    guard(|| {
        let (a, b) = (deref(a, "left operand")?, deref(b, "right operand")?);
        store(out, PalgElement { inner: op(&a.inner, &b.inner)? })
    })
}

/// `a + b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_add(a: *const PalgElement, b: *const PalgElement, out: *mut *mut PalgElement) -> PalgStatus {
    binary(a, b, out, AnyElement::add)
}

/// `a - b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_sub(a: *const PalgElement, b: *const PalgElement, out: *mut *mut PalgElement) -> PalgStatus {
    binary(a, b, out, AnyElement::sub)
}

/// `a * b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_mul(a: *const PalgElement, b: *const PalgElement, out: *mut *mut PalgElement) -> PalgStatus {
    binary(a, b, out, AnyElement::mul)
}

/// `a^e`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_power(a: *const PalgElement, e: u64, out: *mut *mut PalgElement) -> PalgStatus {
    guard(|| store(out, PalgElement { inner: deref(a, "element")?.inner.power(e) }))
}

/// Two-sided inverse. Returns `NotInvertible` for a zero divisor, with the
/// witness in `palg_last_error`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_inverse(a: *const PalgElement, out: *mut *mut PalgElement) -> PalgStatus {
    guard(|| store(out, PalgElement { inner: deref(a, "element")?.inner.inverse()? }))
}

/// Sets `*out` to whether `a` and `b` are the same element of the same algebra.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_equal(a: *const PalgElement, b: *const PalgElement, out: *mut bool) -> PalgStatus {
    guard(|| {
        let eq = deref(a, "left operand")?.inner == deref(b, "right operand")?.inner;
        let out = out.as_mut().ok_or_else(|| Fail(PalgStatus::NullPointer, "output pointer is null".into()))?;
        *out = eq;
        Ok(())
    })
}

/// Canonical printed form.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_element_to_string(a: *const PalgElement, out: *mut *mut c_char) -> PalgStatus {
    guard(|| store_string(out, deref(a, "element")?.inner.to_string()))
}

/// # Safety
/// `s` must come from this library and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn palg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn palg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn run_json(args: Vec<String>, out: *mut *mut c_char) -> Result<(), Fail> {
    let o = cli::run(args);
    if o.stdout.is_empty() {
        let status = if o.code == 2 { PalgStatus::Usage } else { PalgStatus::MathFailure };
        return Err(Fail(status, o.stderr.trim_end().to_string()));
    }
    // SAFETY: callers pass their own out pointer through unchanged.
    unsafe { store_string(out, o.stdout)? };
    if o.code != 0 {
        return Err(Fail(PalgStatus::ChecksFailed, "some verification lines failed".into()));
    }
    Ok(())
}

/// JSON report for the right-to-left linkage of `[alpha, beta)` and
/// `[gamma, beta)` over F_p(a, b). On `ChecksFailed` the report is still written.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_link_report_json(
    p: u64,
    alpha: *const c_char,
    beta: *const c_char,
    gamma: *const c_char,
    out: *mut *mut c_char,
) -> PalgStatus {
    guard(|| {
        let args = vec![
            "link".to_string(),
            "-p".into(),
            p.to_string(),
            "--alpha".into(),
            text(alpha, "alpha")?.into(),
            "--beta".into(),
            text(beta, "beta")?.into(),
            "--gamma".into(),
            text(gamma, "gamma")?.into(),
            "--json".into(),
        ];
        run_json(args, out)
    })
}

/// JSON report of the sampled counterexample check in `[1, a)` and `[1, b)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palg_counterexample_json(p: u64, precision: u32, samples: u32, seed: u64, out: *mut *mut c_char) -> PalgStatus {
    guard(|| {
        let args = ["counterexample", "-p", &p.to_string(), "--precision", &precision.to_string()]
            .into_iter()
            .map(String::from)
            .chain(["--samples".into(), samples.to_string(), "--seed".into(), seed.to_string(), "--json".into()])
            .collect();
        run_json(args, out)
    })
}
