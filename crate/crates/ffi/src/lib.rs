//! C ABI for `ratcirc`.
//!
//! An analysis is created from a modulus and either a residue set or a list
//! of orbit divisors, queried through accessor functions and released with
//! [`rc_analysis_free`]. Every fallible call returns an [`RcStatus`]; the
//! message for the most recent failure on the calling thread is available
//! from [`rc_last_error_message`].
//!
//! Array accessors follow the usual two-call pattern: `len_out` always
//! receives the full length, and the buffer is filled only when `capacity`
//! is large enough. Passing a null buffer with capacity 0 queries the length.
//!
//! Strings returned by the library are owned by the caller and must be
//! released with [`rc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ratcirc::oracle::{self, CirculantGraph};
use ratcirc::pipeline::{self, Analysis};
use ratcirc::report;
use ratcirc::zn::ZnSubset;
use ratcirc::Error;

/// Status codes. Values 0 to 3 agree with the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    Inconsistency = 1,
    InvalidInput = 2,
    TooLarge = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque analysis handle.
pub struct RcAnalysis {
    inner: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RcStatus {
    match e.exit_code() {
        1 => RcStatus::Inconsistency,
        3 => RcStatus::TooLarge,
        _ => RcStatus::InvalidInput,
    }
}

fn fail(status: RcStatus, msg: impl Into<String>) -> RcStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> RcStatus {
    let s = status_of(&e);
    fail(s, e.to_string())
}

/// Runs `f`, turning panics into [`RcStatus::Panic`].
fn guard(f: impl FnOnce() -> RcStatus) -> RcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(RcStatus::Panic, format!("panic: {msg}"))
        }
    }
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, capacity: usize, len_out: *mut usize) -> RcStatus {
    if len_out.is_null() {
        return fail(RcStatus::NullPointer, "len_out is null");
    }
    *len_out = src.len();
    if capacity < src.len() {
        if buf.is_null() && capacity == 0 {
            return RcStatus::Ok;
        }
        return fail(RcStatus::BufferTooSmall, format!("need {} elements, capacity is {capacity}", src.len()));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return fail(RcStatus::NullPointer, "buffer is null");
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    RcStatus::Ok
}

unsafe fn handle<'a>(h: *const RcAnalysis) -> Result<&'a Analysis, RcStatus> {
    h.as_ref().map(|a| &a.inner).ok_or_else(|| fail(RcStatus::NullPointer, "analysis handle is null"))
}

fn string_out(s: String, out: *mut *mut c_char) -> RcStatus {
    if out.is_null() {
        return fail(RcStatus::NullPointer, "out is null");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RcStatus::Ok
        }
        Err(_) => fail(RcStatus::Inconsistency, "string contains a NUL byte"),
    }
}

fn store(result: ratcirc::Result<Analysis>, out: *mut *mut RcAnalysis) -> RcStatus {
    match result {
        Ok(a) => {
            unsafe { *out = Box::into_raw(Box::new(RcAnalysis { inner: a })) };
            RcStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Analyzes the circulant on `Z_n` whose connection set is the union of
/// `(Z_n)_d` over the given proper divisors.
///
/// # Safety
/// `divisors` must point to `len` values (or be null when `len` is 0) and
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_from_divisors(
    n: u64,
    divisors: *const u64,
    len: usize,
    out: *mut *mut RcAnalysis,
) -> RcStatus {
    guard(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(ds) = slice(divisors, len) else {
            return fail(RcStatus::NullPointer, "divisors is null");
        };
        if n < 2 {
            return fail(RcStatus::InvalidInput, format!("n must be at least 2, got {n}"));
        }
        store(pipeline::analyze_divisors(n, ds), out)
    })
}

/// Analyzes `Cay(Z_n, S)` for residues reduced mod `n`. The set must be
/// loopless and closed under multiplication by units.
///
/// # Safety
/// As for [`rc_analysis_from_divisors`].
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_from_set(
    n: u64,
    residues: *const i64,
    len: usize,
    out: *mut *mut RcAnalysis,
) -> RcStatus {
    guard(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(xs) = slice(residues, len) else {
            return fail(RcStatus::NullPointer, "residues is null");
        };
        let req = report::AnalysisRequest::new(n, report::InputMode::Set(xs.to_vec()));
        store(req.connection_set().and_then(|s| pipeline::analyze_set(&s)), out)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_free(h: *mut RcAnalysis) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The modulus `n`, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_modulus(h: *const RcAnalysis) -> u64 {
    h.as_ref().map_or(0, |a| a.inner.modulus())
}

/// Group order as a `u64`. Returns [`RcStatus::TooLarge`] when it does not
/// fit; use [`rc_analysis_order_factored`] then.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_order_u64(h: *const RcAnalysis, out: *mut u64) -> RcStatus {
    guard(|| {
        let a = match handle(h) {
            Ok(a) => a,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        match a.gwp.order().to_u64() {
            Some(v) => {
                *out = v;
                RcStatus::Ok
            }
            None => fail(RcStatus::TooLarge, format!("order {} exceeds u64", a.gwp.order())),
        }
    })
}

/// Prime factorization of the group order as parallel arrays of primes
/// and exponents, primes ascending.
///
/// # Safety
/// `primes` and `exponents` must each hold `capacity` values (or be null
/// with capacity 0); `len_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_order_factored(
    h: *const RcAnalysis,
    primes: *mut u64,
    exponents: *mut u32,
    capacity: usize,
    len_out: *mut usize,
) -> RcStatus {
    guard(|| {
        let a = match handle(h) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let (p, e): (Vec<u64>, Vec<u32>) = a.gwp.order().exponents().iter().map(|(&p, &e)| (p, e)).unzip();
        match copy_out(&p, primes, capacity, len_out) {
            RcStatus::Ok => {}
            s => return s,
        }
        let mut dummy = 0usize;
        copy_out(&e, exponents, capacity, &mut dummy)
    })
}

/// Elements of the lattice of the generated Schur ring, ascending.
///
/// # Safety
/// See the module documentation for the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_lattice(
    h: *const RcAnalysis,
    buf: *mut u64,
    capacity: usize,
    len_out: *mut usize,
) -> RcStatus {
    guard(|| match handle(h) {
        Ok(a) => copy_out(a.lattice().elements(), buf, capacity, len_out),
        Err(s) => s,
    })
}

/// Node weights of the weighted poset, in node order.
///
/// # Safety
/// See the module documentation for the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_poset_weights(
    h: *const RcAnalysis,
    buf: *mut u64,
    capacity: usize,
    len_out: *mut usize,
) -> RcStatus {
    guard(|| match handle(h) {
        Ok(a) => copy_out(a.poset.weights(), buf, capacity, len_out),
        Err(s) => s,
    })
}

/// Strict relations `i ≺ j` of the poset, flattened as pairs
/// `(i, j)` with 0-based nodes. `len_out` receives twice the number of
/// relations.
///
/// # Safety
/// See the module documentation for the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_poset_relations(
    h: *const RcAnalysis,
    buf: *mut usize,
    capacity: usize,
    len_out: *mut usize,
) -> RcStatus {
    guard(|| match handle(h) {
        Ok(a) => {
            let flat: Vec<usize> = a.poset.strict_relations().into_iter().flat_map(|(i, j)| [i, j]).collect();
            copy_out(&flat, buf, capacity, len_out)
        }
        Err(s) => s,
    })
}

/// Coefficients `c_i` of the map from tuples to `Z_n`.
///
/// # Safety
/// See the module documentation for the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_map_coefficients(
    h: *const RcAnalysis,
    buf: *mut u64,
    capacity: usize,
    len_out: *mut usize,
) -> RcStatus {
    guard(|| match handle(h) {
        Ok(a) => copy_out(&a.poset.map_coefficients(), buf, capacity, len_out),
        Err(s) => s,
    })
}

/// Group structure such as `"S_2 ≀ S_3"`, UTF-8.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_expression(h: *const RcAnalysis, out: *mut *mut c_char) -> RcStatus {
    guard(|| match handle(h) {
        Ok(a) => string_out(a.gwp.expression().to_string(), out),
        Err(s) => s,
    })
}

/// The full JSON report, as printed by `ratcirc analyze`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_to_json(h: *const RcAnalysis, out: *mut *mut c_char) -> RcStatus {
    guard(|| match handle(h) {
        Ok(a) => match report::report_from_analysis(a) {
            Ok(r) => string_out(r.to_json(), out),
            Err(e) => from_error(e),
        },
        Err(s) => s,
    })
}

/// Compares the order with a brute-force search. `matches` receives 1 or 0.
/// Fails with [`RcStatus::TooLarge`] when `n > max_n`.
///
/// # Safety
/// `h` must be a live handle and `matches` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_analysis_verify(h: *const RcAnalysis, max_n: usize, matches: *mut i32) -> RcStatus {
    guard(|| {
        let a = match handle(h) {
            Ok(a) => a,
            Err(s) => return s,
        };
        if matches.is_null() {
            return fail(RcStatus::NullPointer, "matches is null");
        }
        let graph = match CirculantGraph::new(a.set.clone()) {
            Ok(g) => g,
            Err(e) => return from_error(e),
        };
        match oracle::brute_force_aut(&graph, max_n) {
            Ok(g) => {
                *matches = (g.order() == *a.gwp.order()) as i32;
                RcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of rational circulants on `Z_n` up to isomorphism. Fails with
/// [`RcStatus::TooLarge`] when the count exceeds `u64`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_count_rational_circulants(n: u64, out: *mut u64) -> RcStatus {
    guard(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        match oracle::count_rational_circulants(n) {
            Ok(c) => match u64::try_from(c) {
                Ok(v) => {
                    *out = v;
                    RcStatus::Ok
                }
                Err(_) => fail(RcStatus::TooLarge, format!("count 2^{} exceeds u64", c.trailing_zeros())),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Whether the residues form a trace-closed set: 1, 0, or -1 on error.
///
/// # Safety
/// `residues` must point to `len` values (or be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn rc_is_rational_set(n: u64, residues: *const i64, len: usize) -> i32 {
    let mut result = -1;
    guard(|| {
        let Some(xs) = slice(residues, len) else {
            return fail(RcStatus::NullPointer, "residues is null");
        };
        if n == 0 || n > usize::MAX as u64 {
            return fail(RcStatus::InvalidInput, format!("bad modulus {n}"));
        }
        match ZnSubset::from_signed(n as usize, xs.iter().copied()) {
            Ok(s) => {
                result = s.is_trace_closed() as i32;
                RcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    });
    result
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn rc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn rc_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"",
    };
    V.as_ptr()
}
