//! C ABI over `fastdice`.
//!
//! Bit sources are opaque heap handles created with [`fd_source_new`] and
//! released with [`fd_source_free`]. Every fallible call returns an
//! `FD_*` status code and writes results through out-pointers; on failure
//! the out-pointers are left untouched and [`fd_last_error`] holds a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fastdice::cost::AsymptoticParams;
use fastdice::{
    asymptotic_cost, auto_batch_size, batch_cost, batch_uniform, bernoulli_rational, exact_cost, fdr_uniform,
    fdr_uniform_range, fisher_yates, nu, plan_batch, random_permutation_unranked, toll, Error, RandomBitSource,
    Rational, SeededBitSource,
};

pub const FD_OK: i32 = 0;
pub const FD_ERR_NULL_POINTER: i32 = -1;
pub const FD_ERR_INVALID_ARGUMENT: i32 = -2;
pub const FD_ERR_RANGE_TOO_LARGE: i32 = -3;
pub const FD_ERR_EMPTY_RANGE: i32 = -4;
pub const FD_ERR_OVERFLOW: i32 = -5;
pub const FD_ERR_INVALID_RATIONAL: i32 = -6;
pub const FD_ERR_FACTORIAL_OVERFLOW: i32 = -7;
pub const FD_ERR_PERIOD_TOO_LONG: i32 = -8;
pub const FD_ERR_BUFFER_TOO_SMALL: i32 = -9;
pub const FD_ERR_SOURCE_EXHAUSTED: i32 = -10;
pub const FD_ERR_PANIC: i32 = -99;

/// Fisher-Yates, one draw per position.
pub const FD_PERM_FISHER_YATES: u32 = 0;
/// One draw of range n!, unranked.
pub const FD_PERM_UNRANK: u32 = 1;
/// Lehmer digits drawn one by one, selection construction.
pub const FD_PERM_LEHMER: u32 = 2;

/// Seeded stream of unbiased bits with a consumption counter.
pub struct FdBitSource {
    inner: SeededBitSource,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> i32 {
    match err {
        Error::ScriptExhausted { .. } => FD_ERR_SOURCE_EXHAUSTED,
        Error::RangeTooLarge(_) => FD_ERR_RANGE_TOO_LARGE,
        Error::EmptyRange { .. } => FD_ERR_EMPTY_RANGE,
        Error::Overflow { .. } => FD_ERR_OVERFLOW,
        Error::ImproperFraction { .. } | Error::InvalidRational { .. } => FD_ERR_INVALID_RATIONAL,
        Error::FactorialOverflow { .. } => FD_ERR_FACTORIAL_OVERFLOW,
        Error::PeriodTooLong { .. } => FD_ERR_PERIOD_TOO_LONG,
        Error::RankOutOfRange { .. }
        | Error::DigitOutOfRange { .. }
        | Error::PoleAtOne
        | Error::OutsideHalfPlane
        | Error::InvalidArgument(_) => FD_ERR_INVALID_ARGUMENT,
    }
}

fn fail(code: i32, msg: impl Into<String>) -> i32 {
    set_last_error(msg.into());
    code
}

// Runs `f`, turning library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FD_OK,
        Ok(Err(code)) => code,
        Err(_) => fail(FD_ERR_PANIC, "internal panic"),
    }
}

fn lib<T>(r: fastdice::Result<T>) -> Result<T, i32> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn source<'a>(src: *mut FdBitSource) -> Result<&'a mut SeededBitSource, i32> {
    src.as_mut()
        .map(|s| &mut s.inner)
        .ok_or_else(|| fail(FD_ERR_NULL_POINTER, "null bit source"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), i32> {
    if out.is_null() {
        return Err(fail(FD_ERR_NULL_POINTER, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_opt<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

/// Creates a bit source seeded with `seed`. Never returns null.
#[no_mangle]
pub extern "C" fn fd_source_new(seed: u64) -> *mut FdBitSource {
    Box::into_raw(Box::new(FdBitSource {
        inner: SeededBitSource::seeded(seed),
    }))
}

/// # Safety
/// `src` must come from [`fd_source_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fd_source_free(src: *mut FdBitSource) {
    if !src.is_null() {
        drop(Box::from_raw(src));
    }
}

/// # Safety
/// `src` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fd_source_next_bit(src: *mut FdBitSource, out: *mut u8) -> i32 {
    guard(|| {
        let bit = lib(source(src)?.next_bit())?;
        write(out, bit)
    })
}

/// Bits consumed since creation or the last reset; 0 for a null handle.
///
/// # Safety
/// `src` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fd_source_bits_consumed(src: *const FdBitSource) -> u64 {
    src.as_ref().map_or(0, |s| s.inner.bits_consumed())
}

/// # Safety
/// `src` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fd_source_reset_counter(src: *mut FdBitSource) -> i32 {
    guard(|| {
        source(src)?.reset_counter();
        Ok(())
    })
}

/// Uniform integer in `[0, n)`. `out_bits` may be null.
///
/// # Safety
/// `src` must be a live handle; `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn fd_uniform(src: *mut FdBitSource, n: u64, out_value: *mut u64, out_bits: *mut u64) -> i32 {
    guard(|| {
        let outcome = lib(fdr_uniform(source(src)?, n))?;
        write(out_value, outcome.value)?;
        write_opt(out_bits, outcome.bits_used);
        Ok(())
    })
}

/// Uniform integer in `[lo, hi]`.
///
/// # Safety
/// `src` must be a live handle; `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn fd_uniform_range(src: *mut FdBitSource, lo: i64, hi: i64, out_value: *mut i64) -> i32 {
    guard(|| {
        let v = lib(fdr_uniform_range(source(src)?, lo, hi))?;
        write(out_value, v)
    })
}

/// Batch size that packs the most variates of range `n` into one draw.
#[no_mangle]
pub extern "C" fn fd_auto_batch_size(n: u64) -> u32 {
    auto_batch_size(n)
}

/// `j` uniform integers in `[0, n)` from a single draw of range `n^j`,
/// written to `out[0..j]`. `out_bits` may be null.
///
/// # Safety
/// `src` must be a live handle; `out` must have room for `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn fd_batch_uniform(
    src: *mut FdBitSource,
    n: u64,
    j: u32,
    out: *mut u64,
    out_len: usize,
    out_bits: *mut u64,
) -> i32 {
    guard(|| {
        let plan = lib(plan_batch(n, j))?;
        if out.is_null() {
            return Err(fail(FD_ERR_NULL_POINTER, "null output buffer"));
        }
        if out_len < j as usize {
            return Err(fail(
                FD_ERR_BUFFER_TOO_SMALL,
                format!("buffer holds {out_len}, batch needs {j}"),
            ));
        }
        let outcome = lib(batch_uniform(source(src)?, &plan))?;
        std::slice::from_raw_parts_mut(out, out_len)[..outcome.values.len()].copy_from_slice(&outcome.values);
        write_opt(out_bits, outcome.bits_used);
        Ok(())
    })
}

/// Bernoulli trial with success probability `num/den`; writes 0 or 1.
///
/// # Safety
/// `src` must be a live handle; `out_value` writable; `out_bits` may be null.
#[no_mangle]
pub unsafe extern "C" fn fd_bernoulli(
    src: *mut FdBitSource,
    num: u64,
    den: u64,
    out_value: *mut u8,
    out_bits: *mut u64,
) -> i32 {
    guard(|| {
        let p = lib(Rational::new(num, den))?;
        let outcome = lib(bernoulli_rational(source(src)?, p))?;
        write(out_value, u8::from(outcome.value))?;
        write_opt(out_bits, outcome.bits_used);
        Ok(())
    })
}

/// Uniform permutation of `1..=n` into `out[0..n]` using one of the
/// `FD_PERM_*` methods.
///
/// # Safety
/// `src` must be a live handle; `out` must have room for `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn fd_permutation(
    src: *mut FdBitSource,
    n: usize,
    method: u32,
    out: *mut u32,
    out_len: usize,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(fail(FD_ERR_NULL_POINTER, "null output buffer"));
        }
        if out_len < n {
            return Err(fail(
                FD_ERR_BUFFER_TOO_SMALL,
                format!("buffer holds {out_len}, permutation needs {n}"),
            ));
        }
        let src = source(src)?;
        let perm = match method {
            FD_PERM_FISHER_YATES => lib(fisher_yates(src, n))?,
            FD_PERM_UNRANK => lib(random_permutation_unranked(src, n))?,
            FD_PERM_LEHMER => lib(fastdice::permutation::random_permutation_selection(src, n))?.0,
            other => {
                return Err(fail(
                    FD_ERR_INVALID_ARGUMENT,
                    format!("unknown permutation method {other}"),
                ))
            }
        };
        let out = std::slice::from_raw_parts_mut(out, out_len);
        for (slot, &v) in out.iter_mut().zip(perm.as_slice()) {
            *slot = v as u32;
        }
        Ok(())
    })
}

/// Exact expected number of bits per draw of range `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_exact_cost(n: u64, out: *mut f64) -> i32 {
    guard(|| write(out, lib(exact_cost(n))?))
}

/// Expected cost above `log2 n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_toll(n: u64, out: *mut f64) -> i32 {
    guard(|| write(out, lib(toll(n))?))
}

/// Expected bits per variate when drawing `j` at a time.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_batch_cost(n: u64, j: u32, out: *mut f64) -> i32 {
    guard(|| write(out, lib(batch_cost(n, j))?))
}

/// Asymptotic cost estimate using `k_terms` Fourier pairs.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_asymptotic_cost(n: u64, k_terms: usize, out: *mut f64) -> i32 {
    guard(|| write(out, lib(asymptotic_cost(n, &AsymptoticParams::with_terms(k_terms)))?))
}

/// `nu(num/den) = sum_k frac(2^k p) / 2^k`, to `precision_bits`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_nu(num: u64, den: u64, precision_bits: u32, out: *mut f64) -> i32 {
    guard(|| {
        let p = lib(Rational::new(num, den))?;
        write(out, nu(p, precision_bits))
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn fd_status_message(code: i32) -> *const c_char {
    let msg: &'static CStr = match code {
        FD_OK => c"ok",
        FD_ERR_NULL_POINTER => c"null pointer",
        FD_ERR_INVALID_ARGUMENT => c"invalid argument",
        FD_ERR_RANGE_TOO_LARGE => c"range exceeds 2^62",
        FD_ERR_EMPTY_RANGE => c"empty range",
        FD_ERR_OVERFLOW => c"batch range overflows 2^62",
        FD_ERR_INVALID_RATIONAL => c"invalid probability",
        FD_ERR_FACTORIAL_OVERFLOW => c"factorial exceeds 2^62",
        FD_ERR_PERIOD_TOO_LONG => c"binary period too long for exact arithmetic",
        FD_ERR_BUFFER_TOO_SMALL => c"output buffer too small",
        FD_ERR_SOURCE_EXHAUSTED => c"bit source exhausted",
        FD_ERR_PANIC => c"internal panic",
        _ => c"unknown status",
    };
    msg.as_ptr()
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating to `cap - 1` bytes. Returns the full
/// message length, so a return value `>= cap` signals truncation.
///
/// # Safety
/// `buf` must be null or have room for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn fd_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}
