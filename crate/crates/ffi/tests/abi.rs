//! The exported functions, called as a C client would.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rackcov_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = rc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn fixture(name: &str) -> *mut RcQuandle {
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { rc_quandle_fixture(cstr(name).as_ptr(), &mut q) },
        RcStatus::Ok
    );
    q
}

#[test]
fn table_round_trip_and_flags() {
    // R3: x*y = 2x - y mod 3
    let table: Vec<u32> = (0..9)
        .map(|i| ((2 * (i / 3) + 3 - i % 3) % 3) as u32)
        .collect();
    let mut q = ptr::null_mut();
    unsafe {
        assert_eq!(
            rc_quandle_from_table(3, table.as_ptr(), &mut q),
            RcStatus::Ok
        );
        assert_eq!(rc_quandle_size(q), 3);
        let mut v = 0u32;
        assert_eq!(rc_quandle_mul(q, 1, 0, &mut v), RcStatus::Ok);
        assert_eq!(v, 2);
        let (mut rack, mut quandle, mut connected) = (false, false, false);
        assert_eq!(rc_quandle_is_rack(q, &mut rack), RcStatus::Ok);
        assert_eq!(rc_quandle_is_quandle(q, &mut quandle), RcStatus::Ok);
        assert_eq!(rc_quandle_is_connected(q, &mut connected), RcStatus::Ok);
        assert!(rack && quandle && connected);
        assert_eq!(rc_quandle_mul(q, 3, 0, &mut v), RcStatus::InvalidInput);
        rc_quandle_free(q);
    }
}

#[test]
fn report_and_simple_connectedness() {
    let q = fixture("R3");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(rc_quandle_report_json(q, &mut s), RcStatus::Ok);
        let json: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        rc_string_free(s);
        assert_eq!(json["simply_connected"], serde_json::Value::Bool(true));

        let mut v = RcVerdict::No;
        assert_eq!(
            rc_quandle_simply_connected(q, 100_000, &mut v),
            RcStatus::Ok
        );
        assert_eq!(v, RcVerdict::Yes);
        rc_quandle_free(q);
    }
    let t6 = fixture("T6");
    let mut v = RcVerdict::Yes;
    assert_eq!(
        unsafe { rc_quandle_simply_connected(t6, 100_000, &mut v) },
        RcStatus::Ok
    );
    assert_eq!(v, RcVerdict::No);
    unsafe { rc_quandle_free(t6) };
}

#[test]
fn identities() {
    let q = fixture("Q4");
    let mut holds = false;
    unsafe {
        let id = cstr("x*(y*(y*(x*y))) = y");
        assert_eq!(
            rc_quandle_satisfies(q, id.as_ptr(), &mut holds),
            RcStatus::Ok
        );
        assert!(holds);
        assert_eq!(
            rc_quandle_satisfies(q, cstr("x*(").as_ptr(), &mut holds),
            RcStatus::InvalidInput
        );
        assert!(!last_error().is_empty());
        rc_quandle_free(q);
    }
}

const Q3_Z2: &str = r#"{"base": "Q3", "fiber": {"kind": "abelian", "moduli": [2]},
    "values": [[[0],[1],[1]],[[0],[0],[0]],[[0],[0],[0]]]}"#;

#[test]
fn cocycles() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(rc_cocycle_parse(cstr(Q3_Z2).as_ptr(), &mut c), RcStatus::Ok);
        let (mut rack, mut quandle) = (false, false);
        assert_eq!(rc_cocycle_check(c, &mut rack, &mut quandle), RcStatus::Ok);
        assert!(rack && quandle);

        let mut e = ptr::null_mut();
        assert_eq!(rc_cocycle_extend(c, &mut e), RcStatus::Ok);
        assert_eq!(rc_quandle_size(e), 6);

        // the Θ-calculus verdict agrees with brute force on the extension
        for id in ["x*(x*y) = y", "x*(x*(x*(x*y))) = y", "medial"] {
            let (mut in_cover, mut direct) = (false, false);
            let id = cstr(id);
            assert_eq!(
                rc_cocycle_satisfies(c, id.as_ptr(), &mut in_cover),
                RcStatus::Ok
            );
            assert_eq!(
                rc_quandle_satisfies(e, id.as_ptr(), &mut direct),
                RcStatus::Ok
            );
            assert_eq!(in_cover, direct);
        }

        let mut same = false;
        assert_eq!(rc_cocycle_cohomologous(c, c, &mut same), RcStatus::Ok);
        assert!(same);
        rc_quandle_free(e);
        rc_cocycle_free(c);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut q = ptr::null_mut();
        let bad = [0u32, 0, 1, 1];
        assert_eq!(
            rc_quandle_from_table(2, bad.as_ptr(), &mut q),
            RcStatus::InvalidInput
        );
        assert!(q.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            rc_quandle_from_table(2, ptr::null(), &mut q),
            RcStatus::NullPointer
        );
        let mut b = false;
        assert_eq!(
            rc_quandle_is_rack(ptr::null(), &mut b),
            RcStatus::NullPointer
        );
        assert_eq!(rc_quandle_size(ptr::null()), 0);
        rc_quandle_free(ptr::null_mut());
        rc_string_free(ptr::null_mut());

        let mut v = RcVerdict::Yes;
        let p3 = fixture("P_3");
        assert_eq!(
            rc_quandle_simply_connected(p3, 1000, &mut v),
            RcStatus::Precondition
        );
        rc_quandle_free(p3);

        // a successful call clears the previous error
        let r3 = fixture("R3");
        assert!(rc_last_error().is_null());
        rc_quandle_free(r3);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Directory holding the library artifacts, two levels above this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_is_valid_c_and_cpp() {
    let header = crate_dir().join("include/rackcov.h");
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status()
            .expect("C toolchain");
        assert!(status.success(), "{compiler} rejects the header");
    }
}

#[test]
fn c_client_links_and_runs() {
    let lib = artifact_dir().join("librackcov_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "rackcov.h"

int main(void) {
    RcQuandle *q = NULL;
    if (rc_quandle_fixture("Aff_7_3", &q) != RC_STATUS_OK) return 10;
    RcVerdict v;
    if (rc_quandle_simply_connected(q, 100000, &v) != RC_STATUS_OK) return 11;
    bool rack = false;
    rc_quandle_is_rack(q, &rack);
    printf("%zu %d %d\n", rc_quandle_size(q), (int)v, (int)rack);
    rc_quandle_free(q);
    if (rc_quandle_fixture("nope", &q) != RC_STATUS_INVALID_INPUT) return 12;
    if (strlen(rc_last_error()) == 0) return 13;
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C toolchain");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "7 1 1\n");
}
