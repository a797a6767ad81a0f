//! C interface to `hodgecert`.
//!
//! Matrices and reports are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`HcStatus`]; the message of the last failure on the calling thread is
//! available from [`hc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hodgecert::blowup::Variant;
use hodgecert::certify::{certify_nonprojective, check_hypo_endo, CertificateReport, CertifyOptions, Conclusion};
use hodgecert::hodge::certificate::EndoVerdict;
use hodgecert::linalg::io::parse_matrix;
use hodgecert::linalg::RatMatrix;
use hodgecert::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Size or shape violates a precondition of the operation.
    InvalidInput = 4,
    /// The computation itself failed.
    Computation = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcVariant {
    Weight1 = 0,
    Weight1NoP1 = 1,
    Weight2 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcConclusion {
    Certified = 0,
    Failed = 1,
    Partial = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcEndoVerdict {
    Proven = 0,
    ProvenConsequences = 1,
    NotProven = 2,
    Failed = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HcOptions {
    pub prime_bound: u64,
    pub samples: u64,
    pub seed: u64,
    pub acknowledge_sampled: bool,
    pub times_p1: bool,
}

/// Opaque rational matrix.
pub struct HcMatrix(RatMatrix);

/// Opaque certificate report.
pub struct HcReport(CertificateReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::Parse(_) => HcStatus::Parse,
        Error::NotSquare { .. } | Error::TooSmall(_) | Error::DimensionMismatch(_) | Error::WrongVariant(_) | Error::Precondition(_) => {
            HcStatus::InvalidInput
        }
        _ => HcStatus::Computation,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), HcStatus>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            HcStatus::Panic
        }
    }
}

fn fail(e: Error) -> HcStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HcStatus> {
    if s.is_null() {
        set_error("null pointer");
        return Err(HcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        HcStatus::InvalidUtf8
    })
}

fn null_error() -> HcStatus {
    set_error("null pointer");
    HcStatus::NullPointer
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn hc_default_options() -> HcOptions {
    let d = CertifyOptions::default();
    HcOptions {
        prime_bound: d.prime_bound,
        samples: d.samples as u64,
        seed: d.seed,
        acknowledge_sampled: d.acknowledge_sampled,
        times_p1: d.times_p1,
    }
}

/// Parses a matrix in the whitespace text format or the JSON document format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_matrix_parse(text: *const c_char, out: *mut *mut HcMatrix) -> HcStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_error());
        }
        let text = read_str(text)?;
        let m = parse_matrix(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(HcMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a handle from [`hc_matrix_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_matrix_free(m: *mut HcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live matrix handle; `rows` and `cols` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hc_matrix_shape(m: *const HcMatrix, rows: *mut usize, cols: *mut usize) -> HcStatus {
    guarded(|| {
        if m.is_null() || rows.is_null() || cols.is_null() {
            return Err(null_error());
        }
        *rows = (*m).0.rows();
        *cols = (*m).0.cols();
        Ok(())
    })
}

/// Runs the endomorphism checks and stores the verdict.
///
/// # Safety
/// `m` must be a live matrix handle and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_check_endo(m: *const HcMatrix, prime_bound: u64, verdict: *mut HcEndoVerdict) -> HcStatus {
    guarded(|| {
        if m.is_null() || verdict.is_null() {
            return Err(null_error());
        }
        let cert = check_hypo_endo(&(*m).0, prime_bound).map_err(fail)?;
        *verdict = match cert.verdict {
            EndoVerdict::Proven => HcEndoVerdict::Proven,
            EndoVerdict::ProvenConsequences => HcEndoVerdict::ProvenConsequences,
            EndoVerdict::NotProven => HcEndoVerdict::NotProven,
            EndoVerdict::Failed => HcEndoVerdict::Failed,
        };
        Ok(())
    })
}

/// Builds the ring for `variant`, runs every check and returns the report.
///
/// # Safety
/// `m` must be a live matrix handle, `options` NULL or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hc_certify(
    m: *const HcMatrix,
    variant: HcVariant,
    options: *const HcOptions,
    out: *mut *mut HcReport,
) -> HcStatus {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return Err(null_error());
        }
        let o = if options.is_null() { hc_default_options() } else { *options };
        let options = CertifyOptions {
            prime_bound: o.prime_bound,
            samples: o.samples as usize,
            seed: o.seed,
            acknowledge_sampled: o.acknowledge_sampled,
            times_p1: o.times_p1,
        };
        let variant = match variant {
            HcVariant::Weight1 => Variant::Weight1,
            HcVariant::Weight1NoP1 => Variant::Weight1NoP1,
            HcVariant::Weight2 => Variant::Weight2,
        };
        let report = certify_nonprojective(&(*m).0, variant, &options).map_err(fail)?;
        *out = Box::into_raw(Box::new(HcReport(report)));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn hc_report_conclusion(r: *const HcReport) -> HcConclusion {
    match (*r).0.conclusion {
        Conclusion::NonProjectiveCertified => HcConclusion::Certified,
        Conclusion::Failed => HcConclusion::Failed,
        Conclusion::Partial => HcConclusion::Partial,
    }
}

/// Same numbering as the command-line exit status.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn hc_report_exit_code(r: *const HcReport) -> i32 {
    (*r).0.exit_code()
}

/// Recomputes every recorded fact; `ok` is set to whether all of them agree.
///
/// # Safety
/// `r` must be a live report handle and `ok` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_report_recheck(r: *const HcReport, ok: *mut bool) -> HcStatus {
    guarded(|| {
        if r.is_null() || ok.is_null() {
            return Err(null_error());
        }
        *ok = (*r).0.recheck().map_err(fail)?;
        Ok(())
    })
}

/// JSON text of the report, to be released with [`hc_string_free`].
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_report_to_json(r: *const HcReport, out: *mut *mut c_char) -> HcStatus {
    guarded(|| {
        if r.is_null() || out.is_null() {
            return Err(null_error());
        }
        let text = (*r).0.to_json().map_err(fail)?;
        *out = CString::new(text).map_err(|_| HcStatus::Computation)?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `r` must be NULL or a handle from [`hc_certify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_report_free(r: *mut HcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
