//! C interface to `setgraded`.
//!
//! Algebras live behind an opaque [`SgAlgebra`] handle created by
//! [`sg_algebra_from_json`] or [`sg_algebra_from_file`] and released with
//! [`sg_algebra_free`]. Every fallible call returns an [`SgStatus`]; on
//! anything but `SG_STATUS_OK` a message is available from
//! [`sg_last_error`]. Strings handed out by the library are released with
//! [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use setgraded::algebra::ValidationReport;
use setgraded::analysis::{self, Verdict};
use setgraded::report::{Report, ReportOptions, Sections};
use setgraded::{document, CheckedAlgebra, GradedAlgebra};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    /// An axiom or an asserted theorem fails.
    MathFailure = 1,
    /// Unreadable or malformed input.
    InputError = 2,
    NullPointer = 3,
    /// The operation needs an algebra that passes validation.
    InvalidAlgebra = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SgVerdict {
    Simple = 0,
    NotSimple = 1,
    Inapplicable = 2,
}

/// Opaque algebra handle.
pub struct SgAlgebra {
    validation: ValidationReport,
    /// Present when validation passed.
    checked: Option<CheckedAlgebra>,
    raw: GradedAlgebra,
}

impl SgAlgebra {
    fn new(alg: GradedAlgebra) -> Self {
        let validation = alg.validate();
        let checked = CheckedAlgebra::from_report(alg.clone(), &validation).ok();
        SgAlgebra { validation, checked, raw: alg }
    }

    fn checked(&self) -> Result<&CheckedAlgebra, (SgStatus, String)> {
        self.checked.as_ref().ok_or_else(|| {
            (SgStatus::InvalidAlgebra, format!("algebra fails: {}", self.validation.failed().join(", ")))
        })
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Run `f`, recording its error message and turning panics into
/// `SG_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> Result<(), (SgStatus, String)>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            SgStatus::Internal
        }
    }
}

fn input(e: setgraded::Error) -> (SgStatus, String) {
    (SgStatus::InputError, e.to_string())
}

fn internal(e: setgraded::Error) -> (SgStatus, String) {
    (SgStatus::Internal, e.to_string())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (SgStatus, String)> {
    if p.is_null() {
        return Err((SgStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SgStatus::InputError, "string is not UTF-8".into()))
}

unsafe fn handle<'a>(p: *const SgAlgebra) -> Result<&'a SgAlgebra, (SgStatus, String)> {
    p.as_ref().ok_or((SgStatus::NullPointer, "null algebra handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, (SgStatus, String)> {
    p.as_mut().ok_or((SgStatus::NullPointer, "null output pointer".into()))
}

fn verdict(v: &Verdict) -> SgVerdict {
    match v {
        Verdict::Simple => SgVerdict::Simple,
        Verdict::NotSimple { .. } => SgVerdict::NotSimple,
        Verdict::Inapplicable { .. } => SgVerdict::Inapplicable,
    }
}

/// Parse an algebra document. On success `*out_alg` owns a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out_alg` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_from_json(json: *const c_char, out_alg: *mut *mut SgAlgebra) -> SgStatus {
    guard(|| {
        let slot = out(out_alg)?;
        *slot = ptr::null_mut();
        let alg = document::load_str(text(json)?).map_err(input)?;
        *slot = Box::into_raw(Box::new(SgAlgebra::new(alg)));
        Ok(())
    })
}

/// Read an algebra document from a file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out_alg` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_from_file(path: *const c_char, out_alg: *mut *mut SgAlgebra) -> SgStatus {
    guard(|| {
        let slot = out(out_alg)?;
        *slot = ptr::null_mut();
        let alg = document::load_file(text(path)?).map_err(input)?;
        *slot = Box::into_raw(Box::new(SgAlgebra::new(alg)));
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_free(alg: *mut SgAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_total_dim(alg: *const SgAlgebra, out_dim: *mut usize) -> SgStatus {
    guard(|| {
        *out(out_dim)? = handle(alg)?.raw.total_dim();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_label_count(alg: *const SgAlgebra, out_count: *mut usize) -> SgStatus {
    guard(|| {
        *out(out_count)? = handle(alg)?.raw.label_count();
        Ok(())
    })
}

/// `SG_STATUS_OK` when every axiom check passes, `SG_STATUS_MATH_FAILURE`
/// otherwise (the failed checks are in [`sg_last_error`]).
///
/// # Safety
/// `alg` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_validate(alg: *const SgAlgebra) -> SgStatus {
    guard(|| {
        let a = handle(alg)?;
        if a.validation.is_valid() {
            Ok(())
        } else {
            Err((SgStatus::MathFailure, format!("failed checks: {}", a.validation.failed().join(", "))))
        }
    })
}

/// Number of connection classes of the nonzero labels.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_class_count(alg: *const SgAlgebra, out_count: *mut usize) -> SgStatus {
    guard(|| {
        let slot = out(out_count)?;
        *slot = handle(alg)?.checked()?.partition().classes.len();
        Ok(())
    })
}

/// Gr-simplicity by the connection criterion and by direct ideal search.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_simplicity(
    alg: *const SgAlgebra,
    out_criterion: *mut SgVerdict,
    out_direct: *mut SgVerdict,
) -> SgStatus {
    guard(|| {
        let c = out(out_criterion)?;
        let d = out(out_direct)?;
        let a = handle(alg)?.checked()?;
        *c = verdict(&analysis::gr_simple_criterion(a).map_err(internal)?);
        *d = verdict(&analysis::gr_simple_direct(a).map_err(internal)?);
        Ok(())
    })
}

/// Full JSON report, as printed by `setgraded report --json`. `*out_json`
/// receives a string to release with [`sg_string_free`]; `*out_exit` the
/// exit code the CLI would return for it.
///
/// # Safety
/// Pointers must be valid; `out_exit` may be null.
#[no_mangle]
pub unsafe extern "C" fn sg_algebra_report_json(
    alg: *const SgAlgebra,
    witness: bool,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> SgStatus {
    guard(|| {
        let slot = out(out_json)?;
        *slot = ptr::null_mut();
        let a = handle(alg)?;
        let report =
            Report::build(a.raw.clone(), ReportOptions { sections: Sections::ALL, witness }).map_err(internal)?;
        if let Some(code) = out_exit.as_mut() {
            *code = report.exit_code();
        }
        *slot = CString::new(report.to_json()).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
