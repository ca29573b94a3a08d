use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ratcirc_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { rc_string_free(p) };
    s
}

fn last_error() -> String {
    let p = rc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn from_divisors(n: u64, ds: &[u64]) -> *mut RcAnalysis {
    let mut h = ptr::null_mut();
    let s = unsafe { rc_analysis_from_divisors(n, ds.as_ptr(), ds.len(), &mut h) };
    assert_eq!(s, RcStatus::Ok);
    assert!(!h.is_null());
    h
}

fn read_u64s(f: unsafe extern "C" fn(*const RcAnalysis, *mut u64, usize, *mut usize) -> RcStatus, h: *const RcAnalysis) -> Vec<u64> {
    let mut len = 0;
    assert_eq!(unsafe { f(h, ptr::null_mut(), 0, &mut len) }, RcStatus::Ok);
    let mut buf = vec![0u64; len];
    assert_eq!(unsafe { f(h, buf.as_mut_ptr(), buf.len(), &mut len) }, RcStatus::Ok);
    buf
}

#[test]
fn striking_example() {
    let h = from_divisors(36, &[2, 3, 4, 6]);
    assert_eq!(unsafe { rc_analysis_modulus(h) }, 36);
    let mut order = 0;
    assert_eq!(unsafe { rc_analysis_order_u64(h, &mut order) }, RcStatus::Ok);
    assert_eq!(order, 165888);

    let mut primes = [0u64; 4];
    let mut exps = [0u32; 4];
    let mut len = 0;
    let s = unsafe { rc_analysis_order_factored(h, primes.as_mut_ptr(), exps.as_mut_ptr(), 4, &mut len) };
    assert_eq!(s, RcStatus::Ok);
    assert_eq!((&primes[..len], &exps[..len]), (&[2u64, 3][..], &[11u32, 4][..]));

    assert_eq!(read_u64s(rc_analysis_lattice, h), vec![1, 2, 3, 4, 6, 12, 18, 36]);
    let weights = read_u64s(rc_analysis_poset_weights, h);
    assert_eq!(weights.iter().product::<u64>(), 36);
    let coeffs = read_u64s(rc_analysis_map_coefficients, h);
    assert_eq!(coeffs.len(), weights.len());

    let mut len = 0;
    unsafe { rc_analysis_poset_relations(h, ptr::null_mut(), 0, &mut len) };
    assert_eq!(len, 6);

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { rc_analysis_expression(h, &mut p) }, RcStatus::Ok);
    assert!(take_string(p).starts_with("GWP["));

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { rc_analysis_to_json(h, &mut p) }, RcStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(p)).unwrap();
    assert_eq!(json["order"], 165888);

    let mut m = -1;
    assert_eq!(unsafe { rc_analysis_verify(h, 40, &mut m) }, RcStatus::Ok);
    assert_eq!(m, 1);
    assert_eq!(unsafe { rc_analysis_verify(h, 20, &mut m) }, RcStatus::TooLarge);
    unsafe { rc_analysis_free(h) };
}

#[test]
fn from_set_and_errors() {
    let mut h = ptr::null_mut();
    let xs = [1i64, -1];
    assert_eq!(unsafe { rc_analysis_from_set(6, xs.as_ptr(), 2, &mut h) }, RcStatus::Ok);
    let mut order = 0;
    unsafe { rc_analysis_order_u64(h, &mut order) };
    assert_eq!(order, 12);
    unsafe { rc_analysis_free(h) };

    let xs = [1i64, 2];
    assert_eq!(unsafe { rc_analysis_from_set(6, xs.as_ptr(), 2, &mut h) }, RcStatus::InvalidInput);
    assert!(h.is_null());
    assert!(last_error().contains("not rational"));

    let ds = [36u64];
    assert_eq!(unsafe { rc_analysis_from_divisors(36, ds.as_ptr(), 1, &mut h) }, RcStatus::InvalidInput);
    assert_eq!(unsafe { rc_analysis_from_divisors(1, ptr::null(), 0, &mut h) }, RcStatus::InvalidInput);
    assert_eq!(unsafe { rc_analysis_from_divisors(36, ptr::null(), 2, &mut h) }, RcStatus::NullPointer);
    assert_eq!(unsafe { rc_analysis_from_divisors(36, ds.as_ptr(), 1, ptr::null_mut()) }, RcStatus::NullPointer);

    let mut out = 0;
    assert_eq!(unsafe { rc_analysis_order_u64(ptr::null(), &mut out) }, RcStatus::NullPointer);
    assert_eq!(unsafe { rc_analysis_modulus(ptr::null()) }, 0);
    unsafe { rc_analysis_free(ptr::null_mut()) };
    unsafe { rc_string_free(ptr::null_mut()) };
}

#[test]
fn buffers() {
    let h = from_divisors(36, &[2, 3, 4, 6]);
    let mut buf = [0u64; 2];
    let mut len = 0;
    assert_eq!(unsafe { rc_analysis_lattice(h, buf.as_mut_ptr(), 2, &mut len) }, RcStatus::BufferTooSmall);
    assert_eq!(len, 8);
    assert_eq!(unsafe { rc_analysis_lattice(h, buf.as_mut_ptr(), 2, ptr::null_mut()) }, RcStatus::NullPointer);
    unsafe { rc_analysis_free(h) };
}

#[test]
fn counts_and_rationality() {
    let mut c = 0;
    assert_eq!(unsafe { rc_count_rational_circulants(12, &mut c) }, RcStatus::Ok);
    assert_eq!(c, 32);
    assert_eq!(unsafe { rc_count_rational_circulants(0, &mut c) }, RcStatus::InvalidInput);
    let xs = [1i64, 5];
    assert_eq!(unsafe { rc_is_rational_set(6, xs.as_ptr(), 2) }, 1);
    assert_eq!(unsafe { rc_is_rational_set(6, xs.as_ptr(), 1) }, 0);
    assert_eq!(unsafe { rc_is_rational_set(0, xs.as_ptr(), 1) }, -1);
    let v = unsafe { CStr::from_ptr(rc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let h = std::fs::read_to_string(dir.join("include/ratcirc.h")).unwrap();
    for name in [
        "typedef struct RcAnalysis RcAnalysis",
        "RC_STATUS_TOO_LARGE = 3",
        "rc_analysis_from_divisors",
        "rc_analysis_from_set",
        "rc_analysis_free",
        "rc_analysis_order_factored",
        "rc_analysis_poset_relations",
        "rc_last_error_message",
        "rc_string_free",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libratcirc_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("ratcirc_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("GWP["));
}
