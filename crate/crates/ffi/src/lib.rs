//! C ABI for wiltonlab.
//!
//! Every fallible call returns a [`WlStatus`]; on failure the message is
//! available from [`wl_last_error_message`] on the same thread. Handles are
//! opaque and must be released with their `_free` function. Strings
//! returned by the library are freed with [`wl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use wiltonlab::report::json::{render_pretty, to_value};
use wiltonlab::wilton::{
    evaluate_identity, evaluate_wilton_classic, moment, EvalOptions, IdentityInstance, IdentityReport, MomentMode,
    Precision, SumStrategy, Verdict,
};
use wiltonlab::{Error, C64};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Arguments outside the domain (poles, excluded points, bad names).
    Domain = 3,
    /// A numerical method failed to reach its tolerance.
    Numeric = 4,
    InvalidArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlMode {
    Classical = 0,
    Regularized = 1,
    MellinBarnes = 2,
    Tail = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlVerdict {
    Converged = 0,
    Conditional = 1,
    DivergentSuspected = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WlComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for WlComplex {
    fn from(z: C64) -> Self {
        WlComplex { re: z.re, im: z.im }
    }
}

impl From<WlComplex> for C64 {
    fn from(z: WlComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

/// A registered Hecke instance prepared for identity evaluation.
pub struct WlInstance(IdentityInstance);

/// An identity report.
pub struct WlReport(IdentityReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: WlStatus, msg: impl Into<String>) -> WlStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> WlStatus {
    let status = if e.is_domain_violation() { WlStatus::Domain } else { WlStatus::Numeric };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `WlStatus::Panic` and clearing the last
/// error on success.
fn guard(f: impl FnOnce() -> WlStatus) -> WlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(WlStatus::Ok) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            WlStatus::Ok
        }
        Ok(s) => s,
        Err(_) => fail(WlStatus::Panic, "internal panic"),
    }
}

fn mode_of(m: WlMode) -> MomentMode {
    match m {
        WlMode::Classical => MomentMode::Classical,
        WlMode::Regularized => MomentMode::Regularized,
        WlMode::MellinBarnes => MomentMode::MellinBarnes,
        WlMode::Tail => MomentMode::Tail,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, WlStatus> {
    if p.is_null() {
        return Err(fail(WlStatus::NullPointer, "string argument is NULL"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(WlStatus::InvalidUtf8, "string argument is not UTF-8"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn wl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wl_instance_new(name: *const c_char, out: *mut *mut WlInstance) -> WlStatus {
    guard(|| {
        if out.is_null() {
            return fail(WlStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match IdentityInstance::lookup(name) {
            Ok(i) => {
                *out = Box::into_raw(Box::new(WlInstance(i)));
                WlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must come from [`wl_instance_new`] and not be freed already.
/// NULL is accepted.
#[no_mangle]
pub unsafe extern "C" fn wl_instance_free(inst: *mut WlInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Weight k, scale λ of the instance (theorem variables).
///
/// # Safety
/// `inst` must be a live handle; `k` and `lambda` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn wl_instance_signature(inst: *const WlInstance, k: *mut f64, lambda: *mut f64) -> WlStatus {
    guard(|| {
        let Some(i) = inst.as_ref() else {
            return fail(WlStatus::NullPointer, "instance is NULL");
        };
        if !k.is_null() {
            *k = i.0.signature.k;
        }
        if !lambda.is_null() {
            *lambda = i.0.signature.lambda;
        }
        WlStatus::Ok
    })
}

/// φ(s) in theorem variables.
///
/// # Safety
/// `inst` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_instance_phi(inst: *const WlInstance, s: WlComplex, out: *mut WlComplex) -> WlStatus {
    guard(|| {
        let (Some(i), false) = (inst.as_ref(), out.is_null()) else {
            return fail(WlStatus::NullPointer, "instance or out is NULL");
        };
        match i.0.signature.phi_ref.evaluate(s.into()) {
            Ok(v) => {
                *out = v.value.into();
                WlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// The Bessel moment M_n(u) (theorem index n, theorem variable u).
///
/// # Safety
/// `inst` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_moment(
    inst: *const WlInstance,
    n: u64,
    u: WlComplex,
    mode: WlMode,
    out: *mut WlComplex,
) -> WlStatus {
    guard(|| {
        let (Some(i), false) = (inst.as_ref(), out.is_null()) else {
            return fail(WlStatus::NullPointer, "instance or out is NULL");
        };
        if n == 0 {
            return fail(WlStatus::InvalidArgument, "n must be at least 1");
        }
        match moment(&i.0.signature, n, u.into(), mode_of(mode), Precision::Standard) {
            Ok(v) => {
                *out = v.into();
                WlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

fn store(out: *mut *mut WlReport, r: wiltonlab::Result<IdentityReport>) -> WlStatus {
    match r {
        Ok(rep) => {
            // SAFETY: callers check `out` before evaluating.
            unsafe { *out = Box::into_raw(Box::new(WlReport(rep))) };
            WlStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Both sides of the identity at corollary variables (u, v) with N terms
/// and automatic summation strategy.
///
/// # Safety
/// `inst` must be a live handle; `out` writable. The report must be
/// released with [`wl_report_free`].
#[no_mangle]
pub unsafe extern "C" fn wl_evaluate_identity(
    inst: *const WlInstance,
    u: WlComplex,
    v: WlComplex,
    mode: WlMode,
    terms: usize,
    out: *mut *mut WlReport,
) -> WlStatus {
    guard(|| {
        let (Some(i), false) = (inst.as_ref(), out.is_null()) else {
            return fail(WlStatus::NullPointer, "instance or out is NULL");
        };
        *out = ptr::null_mut();
        let opts = EvalOptions { mode: mode_of(mode), n: terms, strategy: SumStrategy::Auto, ..Default::default() };
        store(out, evaluate_identity(&i.0, u.into(), v.into(), &opts))
    })
}

/// Wilton's classical formula for ζ(u)ζ(v) with N terms.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wl_wilton_classic(
    u: WlComplex,
    v: WlComplex,
    terms: usize,
    out: *mut *mut WlReport,
) -> WlStatus {
    guard(|| {
        if out.is_null() {
            return fail(WlStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        store(out, evaluate_wilton_classic(u.into(), v.into(), terms))
    })
}

/// # Safety
/// `rep` must come from this library and not be freed already. NULL is
/// accepted.
#[no_mangle]
pub unsafe extern "C" fn wl_report_free(rep: *mut WlReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// |lhs − rhs|/(1 + |lhs|), or NaN for a NULL report.
///
/// # Safety
/// `rep` must be a live report or NULL.
#[no_mangle]
pub unsafe extern "C" fn wl_report_residual(rep: *const WlReport) -> f64 {
    rep.as_ref().map_or(f64::NAN, |r| r.0.residual)
}

/// # Safety
/// `rep` must be a live report; `lhs` and `rhs` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn wl_report_sides(rep: *const WlReport, lhs: *mut WlComplex, rhs: *mut WlComplex) -> WlStatus {
    guard(|| {
        let Some(r) = rep.as_ref() else {
            return fail(WlStatus::NullPointer, "report is NULL");
        };
        if !lhs.is_null() {
            *lhs = r.0.lhs.into();
        }
        if !rhs.is_null() {
            *rhs = r.0.rhs.into();
        }
        WlStatus::Ok
    })
}

/// # Safety
/// `rep` must be a live report; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_report_verdict(rep: *const WlReport, out: *mut WlVerdict) -> WlStatus {
    guard(|| {
        let (Some(r), false) = (rep.as_ref(), out.is_null()) else {
            return fail(WlStatus::NullPointer, "report or out is NULL");
        };
        *out = match r.0.convergence_verdict {
            Verdict::Converged => WlVerdict::Converged,
            Verdict::Conditional => WlVerdict::Conditional,
            Verdict::DivergentSuspected => WlVerdict::DivergentSuspected,
        };
        WlStatus::Ok
    })
}

/// The report as JSON (same rendering as the CLI's `results` field).
/// Free the string with [`wl_string_free`].
///
/// # Safety
/// `rep` must be a live report; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_report_json(rep: *const WlReport, out: *mut *mut c_char) -> WlStatus {
    guard(|| {
        let (Some(r), false) = (rep.as_ref(), out.is_null()) else {
            return fail(WlStatus::NullPointer, "report or out is NULL");
        };
        *out = ptr::null_mut();
        let text = match to_value(&r.0) {
            Ok(v) => render_pretty(&v),
            Err(e) => return from_error(e),
        };
        match CString::new(text) {
            Ok(c) => {
                *out = c.into_raw();
                WlStatus::Ok
            }
            Err(_) => fail(WlStatus::Numeric, "report contains a NUL byte"),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed already. NULL is
/// accepted.
#[no_mangle]
pub unsafe extern "C" fn wl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
