//! C ABI over the supercong core: opaque prime contexts, single-check runs
//! with JSON results, exact oracle sums, and Cornacchia partitions.
//!
//! Conventions: every fallible call returns [`ScStatus`]; results come back
//! through out-pointers, which are written only on `SC_STATUS_OK`. Strings
//! handed out are NUL-terminated, heap-allocated, and owned by the caller
//! until passed to [`sc_string_free`]. A null required pointer yields
//! `SC_STATUS_NULL_POINTER`, never a crash.

use std::ffi::{c_char, CStr, CString};
use std::ptr;
use std::str::FromStr;

use supercong::checks::{
    check_theorem, fib_check, gauss_binomial_check, key_congruence_check, lucas_check,
    remark_i_check, rv_check, sun_check, symmetry_check, tail_vanishing_check, CheckError,
    CheckRecord,
};
use supercong::oracle::{oracle_sum, OracleError, OracleParams};
use supercong::primes::cornacchia;
use supercong::rational::Rational;
use supercong::residue::PrimeContext;

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The given p is not an odd prime.
    InvalidPrime = 2,
    /// The check or oracle kind is not recognized.
    UnknownKind = 3,
    /// The check needs p in a different residue class mod 4.
    WrongResidueClass = 4,
    /// A rational parameter failed to parse, or a required one is missing.
    BadParam = 5,
    /// A string argument is not valid UTF-8.
    InvalidUtf8 = 6,
}

/// Opaque handle holding an odd prime p and its mod-p² arithmetic.
pub struct ScContext {
    inner: PrimeContext,
}

/// Creates a context for the odd prime `p`. On success writes a handle to
/// `out`; release it with [`sc_context_free`].
#[no_mangle]
pub extern "C" fn sc_context_new(p: u64, out: *mut *mut ScContext) -> ScStatus {
    if out.is_null() {
        return ScStatus::NullPointer;
    }
    match PrimeContext::new(p) {
        Ok(inner) => {
            let handle = Box::into_raw(Box::new(ScContext { inner }));
            unsafe { ptr::write(out, handle) };
            ScStatus::Ok
        }
        Err(_) => ScStatus::InvalidPrime,
    }
}

/// Releases a context created by [`sc_context_new`]. Null is a no-op.
#[no_mangle]
pub extern "C" fn sc_context_free(ctx: *mut ScContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// The prime this context was built for; 0 if `ctx` is null.
#[no_mangle]
pub extern "C" fn sc_context_prime(ctx: *const ScContext) -> u64 {
    if ctx.is_null() {
        return 0;
    }
    unsafe { &*ctx }.inner.p()
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn run_named_check(ctx: &PrimeContext, name: &str) -> Result<CheckRecord, ScStatus> {
    let class_err = |e: CheckError| match e {
        CheckError::WrongResidueClass { .. } => ScStatus::WrongResidueClass,
    };
    match name {
        "rv" => Ok(rv_check(ctx)),
        "tail" => Ok(tail_vanishing_check(ctx)),
        "sun" => Ok(sun_check(ctx)),
        "key" => Ok(key_congruence_check(ctx)),
        "fib" => fib_check(ctx).map_err(class_err),
        "lucas" => lucas_check(ctx).map_err(class_err),
        "gauss" => gauss_binomial_check(ctx).map_err(class_err),
        // The parameterized checks run their canonical fixed instance here;
        // richer parameter control lives behind the Rust API and the CLI.
        "theorem" => Ok(check_theorem(ctx, &ctx.zero(), &ctx.reduce_i128(-1))),
        "symmetry" => Ok(symmetry_check(ctx, &ctx.zero(), &ctx.reduce_i128(-1))),
        "remark_i" => {
            let half = ctx.from_rational(1, 2).expect("2 is a unit for odd p");
            Ok(remark_i_check(ctx, &half))
        }
        _ => Err(ScStatus::UnknownKind),
    }
}

/// Runs one named check (`rv`, `theorem`, `symmetry`, `tail`, `remark_i`,
/// `fib`, `lucas`, `sun`, `gauss`, `key`) against the context's prime.
/// Writes the boolean verdict to `out_ok` and, when `out_json` is non-null,
/// the full record as a JSON object string.
#[no_mangle]
pub extern "C" fn sc_check_run(
    ctx: *const ScContext,
    name: *const c_char,
    out_ok: *mut bool,
    out_json: *mut *mut c_char,
) -> ScStatus {
    if ctx.is_null() || name.is_null() || out_ok.is_null() {
        return ScStatus::NullPointer;
    }
    let name = match unsafe { CStr::from_ptr(name) }.to_str() {
        Ok(s) => s,
        Err(_) => return ScStatus::InvalidUtf8,
    };
    let record = match run_named_check(&unsafe { &*ctx }.inner, name) {
        Ok(r) => r,
        Err(status) => return status,
    };
    if !out_json.is_null() {
        let json = serde_json::to_string(&record).expect("records are plain data");
        let c = CString::new(json).expect("JSON contains no NUL");
        unsafe { ptr::write(out_json, c.into_raw()) };
    }
    unsafe { ptr::write(out_ok, record.ok) };
    ScStatus::Ok
}

/// x² + y² = p for a prime p ≡ 1 (mod 4), normalized to x ≡ 1 (mod 4), y > 0.
#[no_mangle]
pub extern "C" fn sc_cornacchia(p: u64, out_x: *mut i64, out_y: *mut i64) -> ScStatus {
    if out_x.is_null() || out_y.is_null() {
        return ScStatus::NullPointer;
    }
    if PrimeContext::new(p).is_err() {
        return ScStatus::InvalidPrime;
    }
    match cornacchia(p) {
        Ok(part) => {
            unsafe {
                ptr::write(out_x, part.x);
                ptr::write(out_y, part.y);
            }
            ScStatus::Ok
        }
        Err(_) => ScStatus::WrongResidueClass,
    }
}

/// Exact denominator-cleared sum for an oracle kind (`rv`, `sun`,
/// `theorem_lhs`, `theorem_rhs`, `remark_lhs`, `remark_rhs`, `fib`, `lucas`,
/// `gauss`). `alpha`, `beta`, `t` are optional rational strings like `-3`
/// or `1/2`; pass null when a kind doesn't need them. The decimal result
/// string goes to `out`.
#[no_mangle]
pub extern "C" fn sc_oracle_sum(
    kind: *const c_char,
    p: u64,
    alpha: *const c_char,
    beta: *const c_char,
    t: *const c_char,
    out: *mut *mut c_char,
) -> ScStatus {
    if kind.is_null() || out.is_null() {
        return ScStatus::NullPointer;
    }
    let kind = match unsafe { CStr::from_ptr(kind) }.to_str() {
        Ok(s) => s,
        Err(_) => return ScStatus::InvalidUtf8,
    };
    if PrimeContext::new(p).is_err() {
        return ScStatus::InvalidPrime;
    }
    let parse = |ptr: *const c_char| -> Result<Option<Rational>, ScStatus> {
        if ptr.is_null() {
            return Ok(None);
        }
        let s = unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| ScStatus::InvalidUtf8)?;
        Rational::from_str(s).map(Some).map_err(|_| ScStatus::BadParam)
    };
    let params = OracleParams {
        alpha: match parse(alpha) {
            Ok(v) => v,
            Err(s) => return s,
        },
        beta: match parse(beta) {
            Ok(v) => v,
            Err(s) => return s,
        },
        t: match parse(t) {
            Ok(v) => v,
            Err(s) => return s,
        },
    };
    match oracle_sum(kind, p, &params) {
        Ok(sum) => {
            let c = CString::new(sum.to_string()).expect("decimal digits contain no NUL");
            unsafe { ptr::write(out, c.into_raw()) };
            ScStatus::Ok
        }
        Err(OracleError::UnknownKind(_)) => ScStatus::UnknownKind,
        Err(OracleError::MissingParam { .. }) => ScStatus::BadParam,
        Err(OracleError::WrongResidueClass(_)) => ScStatus::WrongResidueClass,
    }
}

/// Releases a string produced by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
