use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use isospec_ffi::*;
use libc::c_char;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    isospec_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = isospec_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn parse(text: &str) -> *mut IsospecPoly {
    let mut p = ptr::null_mut();
    assert_eq!(isospec_poly_parse(c(text).as_ptr(), &mut p), IsospecStatus::Ok);
    p
}

#[test]
fn poly_round_trip_and_arithmetic() {
    unsafe {
        let a = parse("a^2 + b*c");
        let b = parse("q - a^2");
        let mut sum = ptr::null_mut();
        assert_eq!(isospec_poly_add(a, b, &mut sum), IsospecStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(isospec_poly_to_string(sum, &mut s), IsospecStatus::Ok);
        let text = take(s);
        let expected = parse("b*c + q");
        assert_eq!(isospec_poly_equal(sum, expected), 1, "{text}");

        let mut prod = ptr::null_mut();
        assert_eq!(isospec_poly_mul(a, b, &mut prod), IsospecStatus::Ok);
        let mut diff = ptr::null_mut();
        assert_eq!(isospec_poly_sub(prod, prod, &mut diff), IsospecStatus::Ok);
        assert_eq!(isospec_poly_is_zero(diff), 1);
        assert_eq!(isospec_poly_is_zero(prod), 0);

        for p in [a, b, sum, expected, prod, diff] {
            isospec_poly_free(p);
        }
        isospec_poly_free(ptr::null_mut());
        isospec_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            isospec_poly_parse(c("x +* y").as_ptr(), &mut p),
            IsospecStatus::InvalidInput
        );
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(isospec_poly_parse(ptr::null(), &mut p), IsospecStatus::NullPointer);
        assert_eq!(isospec_poly_is_zero(ptr::null()), -1);
        let bad = [0xffu8, 0];
        assert_eq!(
            isospec_poly_parse(bad.as_ptr().cast(), &mut p),
            IsospecStatus::InvalidUtf8
        );

        let ok = parse("1");
        assert!(isospec_last_error().is_null());
        isospec_poly_free(ok);
    }
}

#[test]
fn isogeny_strata_verify() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            isospec_isogeny(c("a,b,c").as_ptr(), c("-a,-b,-c").as_ptr(), &mut out),
            IsospecStatus::Ok
        );
        assert!(take(out).contains("[-c, 2*a, b]"));

        let mut out = ptr::null_mut();
        assert_eq!(
            isospec_isogeny(c("1,0,0,1").as_ptr(), c("a,b,c").as_ptr(), &mut out),
            IsospecStatus::InvalidInput
        );
        assert!(last_error().contains("traceless"));

        let mut out = ptr::null_mut();
        assert_eq!(isospec_strata(c("so4").as_ptr(), 2, 0, &mut out), IsospecStatus::Ok);
        let rows = take(out);
        assert_eq!(rows.lines().count(), 3);
        assert!(rows.lines().all(|l| l.contains("\"total_dim\":6")));
        assert_eq!(
            isospec_strata(c("sp4").as_ptr(), 2, 0, &mut out),
            IsospecStatus::InvalidInput
        );

        let mut out = ptr::null_mut();
        assert_eq!(
            isospec_verify(c("matrix").as_ptr(), 2, 8, 0, &mut out),
            IsospecStatus::Ok
        );
        let report = take(out);
        assert!(report.contains("\"status\":\"flagged\""));
        assert_eq!(
            isospec_verify(c("matrix").as_ptr(), 1, 8, 0, &mut out),
            IsospecStatus::InvalidInput
        );
        assert_eq!(
            isospec_verify(c("bogus").as_ptr(), 2, 8, 0, &mut out),
            IsospecStatus::InvalidInput
        );
    }
}

#[test]
fn header_is_valid_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/isospec.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for sym in [
        "isospec_poly_parse",
        "isospec_verify",
        "isospec_last_error",
        "ISOSPEC_STATUS_CHECK_FAILED",
    ] {
        assert!(text.contains(sym), "{sym}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-Werror", "-Wall"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}

#[test]
fn c_program_links_against_the_static_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/ffi-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libisospec_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let bin = profile_dir.join("isospec_ffi_smoke");
    let Ok(status) = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "u^2 - v^2");
}
