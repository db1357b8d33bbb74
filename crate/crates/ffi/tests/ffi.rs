use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use coxsym_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { coxsym_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(coxsym_last_error()) }.to_str().unwrap().to_string()
}

fn diagram(name: &str) -> *mut CoxsymDiagram {
    let c = CString::new(name).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { coxsym_diagram_from_type(c.as_ptr(), &mut d) }, CoxsymStatus::Ok);
    d
}

#[test]
fn parse_classify_name() {
    let text = CString::new("rank 4\nedge 1 2 3\nedge 2 3 4\nedge 3 4 3\n").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { coxsym_diagram_parse(text.as_ptr(), &mut d) }, CoxsymStatus::Ok);
    assert_eq!(unsafe { coxsym_diagram_rank(d) }, 4);
    assert_eq!(take(unsafe { coxsym_diagram_name(d) }), "F_4");
    let mut class = CoxsymClass::Indefinite;
    assert_eq!(unsafe { coxsym_diagram_classify(d, &mut class) }, CoxsymStatus::Ok);
    assert_eq!(class, CoxsymClass::Finite);
    unsafe { coxsym_diagram_free(d) };

    let h5 = diagram("H5");
    assert_eq!(unsafe { coxsym_diagram_classify(h5, &mut class) }, CoxsymStatus::Ok);
    assert_eq!(class, CoxsymClass::CompactHyperbolic);
    unsafe { coxsym_diagram_free(h5) };
}

#[test]
fn parse_errors_set_last_error() {
    let text = CString::new("rank 2\nedge 1 3 3\n").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { coxsym_diagram_parse(text.as_ptr(), &mut d) }, CoxsymStatus::ParseError);
    assert!(d.is_null());
    assert!(last_error().contains('3'), "{}", last_error());
    assert_eq!(unsafe { coxsym_diagram_parse(ptr::null(), &mut d) }, CoxsymStatus::NullPointer);
    let name = CString::new("Q7").unwrap();
    assert_eq!(unsafe { coxsym_diagram_from_type(name.as_ptr(), &mut d) }, CoxsymStatus::ParseError);
}

#[test]
fn analyze_report() {
    let d = diagram("F4");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { coxsym_analyze(d, 4, 0, &mut r) }, CoxsymStatus::Ok);
    assert_eq!(last_error(), "");
    assert_eq!(unsafe { coxsym_report_m(r) }, 8);
    assert!(!unsafe { coxsym_report_strict(r) });
    assert_eq!(take(unsafe { coxsym_report_row(r) }), "F_4 | s_4 | B_3 | A_2 | 8 | (s_3 t)^3");
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { coxsym_report_json(r) })).unwrap();
    assert_eq!(json["m"], 8);
    assert!(take(unsafe { coxsym_report_presentation(r) }).starts_with("gens S1 S2 S3 T1"));
    unsafe { coxsym_report_free(r) };

    assert_eq!(unsafe { coxsym_analyze(d, 5, 0, &mut r) }, CoxsymStatus::InvalidArgument);
    unsafe { coxsym_diagram_free(d) };
}

#[test]
fn verify_and_orbit() {
    let d = diagram("A3");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { coxsym_verify(d, 3, 0, &mut r) }, CoxsymStatus::Ok);
    assert_eq!(unsafe { coxsym_report_failed_checks(r) }, 0);
    unsafe { coxsym_report_free(r) };
    unsafe { coxsym_diagram_free(d) };

    let e8 = diagram("~E8");
    let mut size = 0usize;
    assert_eq!(unsafe { coxsym_orbit_size(e8, 9, 0, &mut size) }, CoxsymStatus::Ok);
    assert_eq!(size, 240);
    unsafe { coxsym_diagram_free(e8) };

    let a2 = diagram("~A2");
    assert_eq!(unsafe { coxsym_orbit_size(a2, 1, 0, &mut size) }, CoxsymStatus::Ok);
    assert_eq!(size, 6);
    unsafe { coxsym_diagram_free(a2) };
}

#[test]
fn exceeded_status() {
    let text = CString::new("rank 3; edge 1 2 inf; edge 2 3 3; edge 1 3 3").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { coxsym_diagram_parse(text.as_ptr(), &mut d) }, CoxsymStatus::Ok);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { coxsym_analyze(d, 3, 100, &mut r) }, CoxsymStatus::Exceeded);
    assert!(r.is_null());
    assert!(last_error().contains("finite index"));
    let mut size = 0;
    assert_eq!(unsafe { coxsym_orbit_size(d, 3, 50, &mut size) }, CoxsymStatus::Exceeded);
    unsafe { coxsym_diagram_free(d) };
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        coxsym_diagram_free(ptr::null_mut());
        coxsym_report_free(ptr::null_mut());
        coxsym_string_free(ptr::null_mut());
        assert_eq!(coxsym_diagram_rank(ptr::null()), 0);
        assert_eq!(coxsym_report_m(ptr::null()), 0);
        assert!(coxsym_diagram_name(ptr::null()).is_null());
        let mut r = ptr::null_mut();
        assert_eq!(coxsym_analyze(ptr::null(), 1, 0, &mut r), CoxsymStatus::NullPointer);
    }
}

#[test]
fn header_is_generated_and_valid_c() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/coxsym.h");
    let header = std::fs::read_to_string(path).unwrap();
    for f in [
        "coxsym_diagram_parse",
        "coxsym_analyze",
        "coxsym_verify",
        "coxsym_orbit_size",
        "coxsym_string_free",
        "COXSYM_STATUS_EXCEEDED = 3",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
    let status = Command::new("cc").args(["-fsyntax-only", "-x", "c", path]).status().expect("C compiler");
    assert!(status.success());
}
