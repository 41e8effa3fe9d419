//! C interface to the fusion-system analysis. Handles are opaque and owned
//! by the caller; every function returns an [`FfStatus`] and leaves a
//! message for [`ff_last_error`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fusionforge::catalog::{analyze, bundled, parse_str, AnalysisReport, AnalyzeOptions, LoadedGroup, Stage};
use fusionforge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGroup = 4,
    NotPrime = 5,
    Bound = 6,
    NotComputed = 7,
    Invalid = 8,
    Panic = 9,
}

/// A validated group from the catalog.
pub struct FfGroup(LoadedGroup);

/// An analysis report.
pub struct FfReport(AnalysisReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FfStatus {
    match e {
        Error::Parse { .. } | Error::OrderMismatch { .. } | Error::OutData(_) | Error::AmbiguousClasses(_) => {
            FfStatus::Parse
        }
        Error::Unknown { .. } => FfStatus::UnknownGroup,
        Error::NotPrime(_) | Error::PrimeDoesNotDivide { .. } => FfStatus::NotPrime,
        Error::Bound(_) | Error::IndexBound { .. } => FfStatus::Bound,
        _ => FfStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (FfStatus, String)>) -> FfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FfStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            FfStatus::Panic
        }
    }
}

fn lib(e: Error) -> (FfStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (FfStatus, String)> {
    if s.is_null() {
        return Err((FfStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (FfStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn null() -> (FfStatus, String) {
    (FfStatus::NullArgument, "null pointer".into())
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ff_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Looks up a bundled group by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ff_group_bundled(name: *const c_char, out: *mut *mut FfGroup) -> FfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = bundled(text(name)?).map_err(lib)?;
        *out = Box::into_raw(Box::new(FfGroup(g)));
        Ok(())
    })
}

/// Parses catalog text and validates entry `index`.
///
/// # Safety
/// `catalog` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ff_group_parse(catalog: *const c_char, index: usize, out: *mut *mut FfGroup) -> FfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let entries = parse_str(text(catalog)?).map_err(lib)?;
        let e = entries
            .get(index)
            .ok_or_else(|| (FfStatus::Invalid, format!("entry {} of {}", index, entries.len())))?;
        *out = Box::into_raw(Box::new(FfGroup(LoadedGroup::from_entry(e).map_err(lib)?)));
        Ok(())
    })
}

/// Group order; fails with `Bound` when it does not fit in 64 bits.
///
/// # Safety
/// `g` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ff_group_order(g: *const FfGroup, out: *mut u64) -> FfStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let digits = g.0.group.order().to_u64_digits();
        if digits.len() > 1 {
            return Err((FfStatus::Bound, "order exceeds 64 bits".into()));
        }
        *out = digits.first().copied().unwrap_or(0);
        Ok(())
    })
}

/// Permutation degree.
///
/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn ff_group_degree(g: *const FfGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.group.degree())
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ff_group_free(g: *mut FfGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Runs the analysis at prime `p`. `max_lattice = 0` keeps the default bound.
///
/// # Safety
/// `g` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ff_analyze(
    g: *const FfGroup,
    p: u64,
    max_lattice: u64,
    elementary_only: bool,
    out: *mut *mut FfReport,
) -> FfStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let mut opts = AnalyzeOptions {
            elementary_only,
            ..AnalyzeOptions::default()
        };
        if max_lattice > 0 {
            opts.max_lattice = max_lattice;
        }
        let r = analyze(&g.0, p, &opts).map_err(lib)?;
        *out = Box::into_raw(Box::new(FfReport(r)));
        Ok(())
    })
}

/// The report as JSON; free with [`ff_string_free`].
///
/// # Safety
/// `r` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ff_report_json(r: *const FfReport, out: *mut *mut c_char) -> FfStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let s = serde_json::to_string_pretty(&r.0).map_err(|e| (FfStatus::Invalid, e.to_string()))?;
        *out = CString::new(s).map_err(|e| (FfStatus::Invalid, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Order of the Sylow subgroup.
///
/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn ff_report_sylow_order(r: *const FfReport) -> u64 {
    r.as_ref().map_or(0, |r| r.0.sylow.order)
}

fn done<T>(s: &Stage<T>) -> Result<&T, (FfStatus, String)> {
    match s {
        Stage::Done { value } => Ok(value),
        Stage::Skipped { reason } => Err((FfStatus::NotComputed, reason.clone())),
        Stage::Failed { message } => Err((FfStatus::NotComputed, message.clone())),
    }
}

/// `|Out(F)|`; `NotComputed` when the stage was skipped or failed.
///
/// # Safety
/// `r` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ff_report_out_f_order(r: *const FfReport, out: *mut u64) -> FfStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = done(&r.0.aut_f)?.out_f_order;
        Ok(())
    })
}

/// Number of essential classes.
///
/// # Safety
/// `r` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ff_report_essential_count(r: *const FfReport, out: *mut usize) -> FfStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = done(&r.0.essential_classes)?.len();
        Ok(())
    })
}

/// Number of classes in Ẑ(F).
///
/// # Safety
/// `r` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ff_report_z_hat_count(r: *const FfReport, out: *mut usize) -> FfStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = done(&r.0.z_hat)?.len();
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ff_report_free(r: *mut FfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
