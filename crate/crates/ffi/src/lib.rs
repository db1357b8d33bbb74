//! C interface to `coxsym`.
//!
//! Objects are opaque handles created by `coxsym_*` constructors and
//! released with the matching `*_free`. Functions return a
//! [`CoxsymStatus`]; on failure `coxsym_last_error` describes the problem
//! for the calling thread. Strings returned to the caller are owned by the
//! caller and must be released with `coxsym_string_free`. Nodes are
//! one-based, as in the text formats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxsym::diagram::{classify, named_type, parse_diagram, type_name};
use coxsym::rootorbit::{orbit_size, OrbitError};
use coxsym::symgen::AnalyzeError;
use coxsym::{CoxeterMatrix, GroupClass, Limits, SymGenReport};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxsymStatus {
    Ok = 0,
    CheckFailed = 1,
    ParseError = 2,
    Exceeded = 3,
    NullPointer = 4,
    InvalidArgument = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxsymClass {
    Finite = 0,
    Affine = 1,
    CompactHyperbolic = 2,
    NonCompactHyperbolic = 3,
    Indefinite = 4,
}

impl From<GroupClass> for CoxsymClass {
    fn from(c: GroupClass) -> Self {
        match c {
            GroupClass::Finite => CoxsymClass::Finite,
            GroupClass::Affine => CoxsymClass::Affine,
            GroupClass::CompactHyperbolic => CoxsymClass::CompactHyperbolic,
            GroupClass::NonCompactHyperbolic => CoxsymClass::NonCompactHyperbolic,
            GroupClass::Indefinite => CoxsymClass::Indefinite,
        }
    }
}

/// A Coxeter diagram.
pub struct CoxsymDiagram {
    matrix: CoxeterMatrix,
}

/// The analysis of a diagram at one node.
pub struct CoxsymReport {
    report: SymGenReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: CoxsymStatus, msg: impl Into<String>) -> CoxsymStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> CoxsymStatus) -> CoxsymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == CoxsymStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(CoxsymStatus::Internal, "internal panic"),
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, CoxsymStatus> {
    if p.is_null() {
        return Err(fail(CoxsymStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CoxsymStatus::InvalidArgument, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn analyze_status(e: &AnalyzeError) -> CoxsymStatus {
    match e {
        AnalyzeError::Exceeded { .. } => CoxsymStatus::Exceeded,
        AnalyzeError::Diagram(_) | AnalyzeError::Presentation(_) => CoxsymStatus::InvalidArgument,
        AnalyzeError::Enumerate(_) => CoxsymStatus::Internal,
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `coxsym_*` call on this thread.
#[no_mangle]
pub extern "C" fn coxsym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the diagram text format into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxsym_diagram_parse(text: *const c_char, out: *mut *mut CoxsymDiagram) -> CoxsymStatus {
    guard(|| {
        if out.is_null() {
            return fail(CoxsymStatus::NullPointer, "null output pointer");
        }
        let src = match c_str(text) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_diagram(src) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(CoxsymDiagram { matrix: m }));
                CoxsymStatus::Ok
            }
            Err(e) => fail(CoxsymStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds a named type such as `F4`, `~E8` or `I2(7)` into `*out`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxsym_diagram_from_type(name: *const c_char, out: *mut *mut CoxsymDiagram) -> CoxsymStatus {
    guard(|| {
        if out.is_null() {
            return fail(CoxsymStatus::NullPointer, "null output pointer");
        }
        let src = match c_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match named_type(src) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(CoxsymDiagram { matrix: m }));
                CoxsymStatus::Ok
            }
            Err(e) => fail(CoxsymStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `d` must come from a `coxsym_diagram_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_diagram_free(d: *mut CoxsymDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `d` must be a live diagram handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_diagram_rank(d: *const CoxsymDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.matrix.rank())
}

/// Type name such as `B_3 x A_1`; release with `coxsym_string_free`.
///
/// # Safety
/// `d` must be a live diagram handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_diagram_name(d: *const CoxsymDiagram) -> *mut c_char {
    match d.as_ref() {
        Some(d) => into_c_string(type_name(&d.matrix)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxsym_diagram_classify(d: *const CoxsymDiagram, out: *mut CoxsymClass) -> CoxsymStatus {
    guard(|| match (d.as_ref(), out.is_null()) {
        (Some(d), false) => {
            *out = classify(&d.matrix).class.into();
            CoxsymStatus::Ok
        }
        _ => fail(CoxsymStatus::NullPointer, "null argument"),
    })
}

fn limits(max_cosets: usize) -> Limits {
    Limits { max_cosets: (max_cosets > 0).then_some(max_cosets), ..Limits::default() }
}

unsafe fn run_analysis(
    d: *const CoxsymDiagram,
    node: usize,
    max_cosets: usize,
    out: *mut *mut CoxsymReport,
    full: bool,
) -> CoxsymStatus {
    guard(|| {
        let Some(d) = d.as_ref() else {
            return fail(CoxsymStatus::NullPointer, "null diagram");
        };
        if out.is_null() {
            return fail(CoxsymStatus::NullPointer, "null output pointer");
        }
        if node == 0 || node > d.matrix.rank() {
            return fail(CoxsymStatus::InvalidArgument, format!("node {node} out of range 1..={}", d.matrix.rank()));
        }
        let l = limits(max_cosets);
        let r = if full { coxsym::verify(&d.matrix, node - 1, &l) } else { coxsym::analyze(&d.matrix, node - 1, &l) };
        match r {
            Ok(report) => {
                let passed = report.all_passed();
                *out = Box::into_raw(Box::new(CoxsymReport { report }));
                if passed {
                    CoxsymStatus::Ok
                } else {
                    fail(CoxsymStatus::CheckFailed, "a check failed; see the report")
                }
            }
            Err(e) => fail(analyze_status(&e), e.to_string()),
        }
    })
}

/// Analyzes the diagram at `node` (one-based). `max_cosets = 0` selects
/// the default limit. On `CheckFailed` the report is still written.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxsym_analyze(
    d: *const CoxsymDiagram,
    node: usize,
    max_cosets: usize,
    out: *mut *mut CoxsymReport,
) -> CoxsymStatus {
    run_analysis(d, node, max_cosets, out, false)
}

/// Like `coxsym_analyze`, running every independent check.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxsym_verify(
    d: *const CoxsymDiagram,
    node: usize,
    max_cosets: usize,
    out: *mut *mut CoxsymReport,
) -> CoxsymStatus {
    run_analysis(d, node, max_cosets, out, true)
}

/// # Safety
/// `r` must come from `coxsym_analyze`/`coxsym_verify` or be null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_free(r: *mut CoxsymReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Index `m`, or 0 for a null handle.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_m(r: *const CoxsymReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.m)
}

/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_strict(r: *const CoxsymReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.strict)
}

/// Number of checks that failed.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_failed_checks(r: *const CoxsymReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.checks.iter().filter(|c| c.failed()).count())
}

/// The table row `W | t | W' | C | m | relations`.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_row(r: *const CoxsymReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.report.table_line()))
}

/// The report as JSON.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_json(r: *const CoxsymReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.report.to_json()))
}

/// The presentation `Q` in the native text format.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn coxsym_report_presentation(r: *const CoxsymReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.report.presentation.clone()))
}

/// Size of the orbit of the simple root at `node` under the other
/// reflections. `limit = 0` selects the default.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxsym_orbit_size(
    d: *const CoxsymDiagram,
    node: usize,
    limit: usize,
    out: *mut usize,
) -> CoxsymStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(CoxsymStatus::NullPointer, "null argument");
        };
        if node == 0 || node > d.matrix.rank() {
            return fail(CoxsymStatus::InvalidArgument, format!("node {node} out of range 1..={}", d.matrix.rank()));
        }
        let limit = if limit == 0 { coxsym::rootorbit::DEFAULT_ORBIT_LIMIT } else { limit };
        match orbit_size(&d.matrix, node - 1, limit) {
            Ok(o) => {
                *out = o.size;
                CoxsymStatus::Ok
            }
            Err(e @ OrbitError::Exceeded { .. }) => fail(CoxsymStatus::Exceeded, e.to_string()),
            Err(e) => fail(CoxsymStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library or be null, and is freed once.
#[no_mangle]
pub unsafe extern "C" fn coxsym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
