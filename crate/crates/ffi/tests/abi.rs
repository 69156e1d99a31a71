use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use pcarr_ffi::*;

const TWO: &str = "PC1:n=2:2.1.4.3.0.5.7.6.1.2.6.7.5.0.3.4";

fn code(text: &str) -> *mut PcarrCode {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pcarr_code_parse(text.as_ptr(), &mut out) }, PcarrStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pcarr_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn code_round_trips_through_text() {
    let c = code(TWO);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pcarr_code_to_string(c, &mut s) }, PcarrStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), TWO);
    let d = code(TWO);
    assert!(unsafe { pcarr_code_equal(c, d) });
    unsafe {
        pcarr_string_free(s);
        pcarr_code_free(c);
        pcarr_code_free(d);
    }
}

#[test]
fn parse_failure_sets_status_and_message() {
    let text = CString::new("PC1:n=2:1.2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pcarr_code_parse(text.as_ptr(), &mut out) }, PcarrStatus::Parse);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { pcarr_code_parse(ptr::null(), &mut out) }, PcarrStatus::NullPointer);
}

#[test]
fn enumerate_four_circles_intersecting() {
    let mut list = ptr::null_mut();
    let st = unsafe { pcarr_enumerate(4, PcarrClass::Intersecting as u32, false, &mut list) };
    assert_eq!(st, PcarrStatus::Ok);
    assert_eq!(unsafe { pcarr_code_list_len(list) }, 8);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { pcarr_code_list_get(list, 8, &mut c) }, PcarrStatus::OutOfRange);
    let mut digon_free = 0;
    for i in 0..8 {
        assert_eq!(unsafe { pcarr_code_list_get(list, i, &mut c) }, PcarrStatus::Ok);
        let mut flags = PcarrFlags::default();
        assert_eq!(unsafe { pcarr_code_flags(c, &mut flags) }, PcarrStatus::Ok);
        assert!(flags.intersecting && flags.connected);
        assert_eq!(flags.num_crossings, 12);
        digon_free += flags.digon_free as usize;
        unsafe { pcarr_code_free(c) };
    }
    assert_eq!(digon_free, 2);
    unsafe { pcarr_code_list_free(list) };
}

#[test]
fn enumerate_rejects_bad_class_and_guarded_sizes() {
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { pcarr_enumerate(3, 99, false, &mut list) }, PcarrStatus::OutOfRange);
    assert_eq!(unsafe { pcarr_enumerate(8, PcarrClass::Connected as u32, false, &mut list) }, PcarrStatus::Unsupported);
    assert!(list.is_null());
}

#[test]
fn krupp_certificate_and_filters() {
    let params = [0i64, 0, 2, 2, 0, 2, 1, 2, 2];
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { pcarr_certificate_from_scene(params.as_ptr(), 3, &mut cert) }, PcarrStatus::Ok);
    assert_eq!(unsafe { pcarr_certificate_num_circles(cert) }, 3);
    let mut xyr = [0i64; 3];
    assert_eq!(unsafe { pcarr_certificate_circle(cert, 1, xyr.as_mut_ptr()) }, PcarrStatus::Ok);
    assert_eq!(xyr, [2, 0, 2]);
    let mut krupp = ptr::null_mut();
    assert_eq!(unsafe { pcarr_certificate_code(cert, &mut krupp) }, PcarrStatus::Ok);
    let mut flags = PcarrFlags::default();
    unsafe { pcarr_code_flags(krupp, &mut flags) };
    assert!(flags.great && flags.digon_free);
    assert_eq!((flags.triangles, flags.symmetry), (8, 48));

    let mut fired = false;
    assert_eq!(unsafe { pcarr_filter_nonkrupp_triangles(krupp, &mut fired) }, PcarrStatus::Ok);
    assert!(!fired);
    assert_eq!(unsafe { pcarr_filter_krupp_triangles(krupp, &mut fired) }, PcarrStatus::Precondition);

    let mut svg = ptr::null_mut();
    assert_eq!(unsafe { pcarr_certificate_svg(cert, &mut svg) }, PcarrStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(svg) }.to_str().unwrap().matches("<circle").count(), 3);
    unsafe {
        pcarr_string_free(svg);
        pcarr_code_free(krupp);
        pcarr_certificate_free(cert);
    }
}

#[test]
fn mismatched_scene_is_rejected() {
    let two = code(TWO);
    let apart = [0i64, 0, 1, 5, 0, 1];
    let mut cert = ptr::null_mut();
    let st = unsafe { pcarr_certificate_new(two, apart.as_ptr(), 2, &mut cert) };
    assert_eq!(st, PcarrStatus::Precondition);
    let touching_three = [0i64, 0, 2, 2, 0, 2, 1, 2, 2];
    let st = unsafe { pcarr_certificate_new(two, touching_three.as_ptr(), 3, &mut cert) };
    assert_eq!(st, PcarrStatus::Mismatch);
    assert!(cert.is_null());
    let crossing = [0i64, 0, 2, 2, 0, 2];
    assert_eq!(unsafe { pcarr_certificate_new(two, crossing.as_ptr(), 2, &mut cert) }, PcarrStatus::Ok);
    unsafe {
        pcarr_certificate_free(cert);
        pcarr_code_free(two);
    }
}

#[test]
fn realize_two_circles() {
    let two = code(TWO);
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { pcarr_realize(two, 10, 10_000, 10.0, 1, &mut cert) }, PcarrStatus::Ok);
    let mut got = ptr::null_mut();
    unsafe { pcarr_certificate_code(cert, &mut got) };
    assert!(unsafe { pcarr_code_equal(two, got) });
    assert_eq!(unsafe { pcarr_realize(two, 0, 10, 1.0, 1, &mut cert) }, PcarrStatus::OutOfRange);
    unsafe {
        pcarr_code_free(got);
        pcarr_certificate_free(cert);
        pcarr_code_free(two);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/pcarr.h")).unwrap();
    for f in ["pcarr_code_parse", "pcarr_enumerate", "pcarr_certificate_new", "pcarr_realize", "pcarr_last_error"] {
        assert!(header.contains(f), "{f} missing from header");
    }
    let src = tempfile_path("pcarr_header_check.c");
    std::fs::write(
        &src,
        "#include \"pcarr.h\"\n\
         int main(void) {\n\
           PcarrCode *c = 0;\n\
           PcarrStatus st = pcarr_code_parse(\"x\", &c);\n\
           PcarrFlags f;\n\
           if (st == PCARR_STATUS_OK) pcarr_code_flags(c, &f);\n\
           pcarr_code_free(c);\n\
           return (int)PCARR_CLASS_GREAT;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .expect("C compiler available");
    assert!(status.success());
}

fn tempfile_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}
