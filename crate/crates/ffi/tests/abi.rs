//! Exercises the C entry points from Rust through raw pointers.

use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use pcm_ffi::*;

const SINGLE_CONE: &str = "4\n1 2 1 1/2\n1/2 1 2 1\n1 1/2 1 2\n2 1 1/2 1\n";

fn parse(text: &str) -> *mut PcmMatrix {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { pcm_matrix_parse(c.as_ptr(), &mut m) }, PcmStatus::Ok);
    m
}

fn last_error() -> String {
    let p = pcm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn efficiency_with_certificate() {
    let m = parse(SINGLE_CONE);
    assert_eq!(unsafe { pcm_matrix_dim(m) }, 4);
    let (num, den) = ([2i64, 1, 1, 1], [1i64, 1, 2, 1]);
    let mut efficient = false;
    let mut cycle = [0usize; 4];
    let s = unsafe { pcm_is_efficient(m, num.as_ptr(), den.as_ptr(), 4, &mut efficient, cycle.as_mut_ptr()) };
    assert_eq!(s, PcmStatus::Ok);
    assert!(efficient);
    assert_eq!(cycle, [1, 4, 3, 2]);
    assert!(pcm_last_error().is_null());
    unsafe { pcm_matrix_free(m) };
}

#[test]
fn inefficient_vector_and_fraction_constructor() {
    // Ones except a_12 = 1/3, a_13 = 1/2.
    let num = [1i64, 1, 1, 1, 3, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1];
    let den = [1i64, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { pcm_matrix_from_fractions(4, num.as_ptr(), den.as_ptr(), &mut m) }, PcmStatus::Ok);
    let (wn, wd) = ([2i64, 4, 5, 4], [1i64; 4]);
    let mut efficient = true;
    let s = unsafe { pcm_is_efficient(m, wn.as_ptr(), wd.as_ptr(), 4, &mut efficient, ptr::null_mut()) };
    assert_eq!(s, PcmStatus::Ok);
    assert!(!efficient);
    unsafe { pcm_matrix_free(m) };
}

#[test]
fn decomposition_round_trip() {
    let m = parse(SINGLE_CONE);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pcm_decompose(m, 8, &mut d) }, PcmStatus::Ok);
    assert_eq!(unsafe { pcm_decomposition_cone_count(d) }, 1);

    let (num, den) = ([1i64, 8, 4, 2], [1i64; 4]);
    let mut found = false;
    let mut cycle = [0usize; 4];
    let s = unsafe { pcm_decomposition_membership(d, num.as_ptr(), den.as_ptr(), 4, &mut found, cycle.as_mut_ptr()) };
    assert_eq!(s, PcmStatus::Ok);
    assert!(found);
    assert_eq!(cycle, [1, 4, 3, 2]);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { pcm_decomposition_to_json(d, &mut json) }, PcmStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let back = pcm_core::io::parse_decomposition_json(&text).unwrap();
    assert_eq!(back.cones.len(), 1);
    unsafe {
        pcm_string_free(json);
        pcm_decomposition_free(d);
        pcm_matrix_free(m);
    }
}

#[test]
fn errors_map_to_codes() {
    let mut m = ptr::null_mut();
    let bad = CString::new("2\n1 2\n2 1\n").unwrap();
    assert_eq!(unsafe { pcm_matrix_parse(bad.as_ptr(), &mut m) }, PcmStatus::NotReciprocal);
    assert!(m.is_null());
    assert!(last_error().contains("reciprocal"));

    let garbage = CString::new("two").unwrap();
    assert_eq!(unsafe { pcm_matrix_parse(garbage.as_ptr(), &mut m) }, PcmStatus::Parse);
    assert_eq!(unsafe { pcm_matrix_parse(ptr::null(), &mut m) }, PcmStatus::NullPointer);

    let (num, den) = ([1i64, 1, 1, 1], [1i64, 0, 0, 1]);
    assert_eq!(unsafe { pcm_matrix_from_fractions(2, num.as_ptr(), den.as_ptr(), &mut m) }, PcmStatus::Domain);

    let five = parse(&pcm_core::io::matrix_to_text(&pcm_core::fixtures::column_perturbed_5x5()));
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pcm_decompose(five, 4, &mut d) }, PcmStatus::CapExceeded);
    assert!(d.is_null());

    let (wn, wd) = ([1i64, 1, 1], [1i64; 3]);
    let mut efficient = false;
    let s = unsafe { pcm_is_efficient(five, wn.as_ptr(), wd.as_ptr(), 3, &mut efficient, ptr::null_mut()) };
    assert_eq!(s, PcmStatus::DimensionMismatch);
    let s = unsafe { pcm_is_efficient(ptr::null(), wn.as_ptr(), wd.as_ptr(), 3, &mut efficient, ptr::null_mut()) };
    assert_eq!(s, PcmStatus::NullPointer);
    unsafe { pcm_matrix_free(five) };
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        pcm_matrix_free(ptr::null_mut());
        pcm_decomposition_free(ptr::null_mut());
        pcm_string_free(ptr::null_mut());
        assert_eq!(pcm_matrix_dim(ptr::null()), 0);
        assert_eq!(pcm_decomposition_cone_count(ptr::null()), 0);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/pcm.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["pcm_matrix_parse", "pcm_decompose", "pcm_last_error", "PCM_STATUS_CAP_EXCEEDED"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = Command::new("cc").args(["-std=c99", "-fsyntax-only", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
