//! C interface to `pcm-core`.
//!
//! Matrices and decompositions are opaque heap handles released with their
//! `*_free` function. Every entry point returns a [`PcmStatus`]; on failure
//! the message is available from [`pcm_last_error`] on the same thread.
//! Vectors cross the boundary as parallel numerator/denominator arrays and
//! cycles as 1-based vertex lists of length `n`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pcm_core::decompose::{decompose, membership, Decomposition};
use pcm_core::graph::is_efficient;
use pcm_core::io::{decomposition_to_json, parse_matrix};
use pcm_core::rational::ratio;
use pcm_core::{Error, HamiltonianCycle, Rational, ReciprocalMatrix, WeightVector};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotReciprocal = 4,
    DimensionMismatch = 5,
    Domain = 6,
    Contract = 7,
    CapExceeded = 8,
    NonConvergence = 9,
    IndexOutOfRange = 10,
    Panic = 11,
}

/// Opaque reciprocal matrix.
pub struct PcmMatrix(ReciprocalMatrix);

/// Opaque cone decomposition of a matrix's efficient set.
pub struct PcmDecomposition(Decomposition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> PcmStatus {
    match err {
        Error::Domain(_) => PcmStatus::Domain,
        Error::DimensionMismatch { .. } => PcmStatus::DimensionMismatch,
        Error::NotReciprocal { .. } => PcmStatus::NotReciprocal,
        Error::Parse { .. } => PcmStatus::Parse,
        Error::Contract(_) => PcmStatus::Contract,
        Error::CapExceeded { .. } => PcmStatus::CapExceeded,
        Error::NonConvergence { .. } => PcmStatus::NonConvergence,
        Error::IndexOutOfRange { .. } => PcmStatus::IndexOutOfRange,
    }
}

struct Failure(PcmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PcmStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PcmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PcmStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            PcmStatus::Panic
        }
    }
}

unsafe fn fractions(num: *const i64, den: *const i64, len: usize) -> Result<Vec<Rational>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if num.is_null() || den.is_null() {
        return Err(null("numerator or denominator array"));
    }
    let (num, den) = (std::slice::from_raw_parts(num, len), std::slice::from_raw_parts(den, len));
    num.iter()
        .zip(den)
        .map(|(&p, &q)| {
            if q == 0 {
                Err(Failure(PcmStatus::Domain, "zero denominator".to_string()))
            } else {
                Ok(ratio(p, q))
            }
        })
        .collect()
}

unsafe fn write_cycle(cycle: &HamiltonianCycle, out: *mut usize) {
    if !out.is_null() {
        for (k, v) in cycle.one_based().into_iter().enumerate() {
            *out.add(k) = v;
        }
    }
}

unsafe fn matrix_ref<'a>(m: *const PcmMatrix) -> Result<&'a ReciprocalMatrix, Failure> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("matrix"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Parses a matrix from the text or JSON format accepted by the CLI.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcm_matrix_parse(text: *const c_char, out: *mut *mut PcmMatrix) -> PcmStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(PcmStatus::InvalidUtf8, e.to_string()))?;
        put(out, PcmMatrix(parse_matrix(s)?))
    })
}

/// Builds an `n x n` matrix from row-major numerator and denominator arrays
/// of length `n * n`.
///
/// # Safety
/// `num` and `den` must hold `n * n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcm_matrix_from_fractions(
    n: usize,
    num: *const i64,
    den: *const i64,
    out: *mut *mut PcmMatrix,
) -> PcmStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Failure(PcmStatus::Domain, "dimension overflow".to_string()))?;
        let flat = fractions(num, den, len)?;
        let rows = flat.chunks(n.max(1)).map(<[Rational]>::to_vec).collect();
        put(out, PcmMatrix(ReciprocalMatrix::from_rows(rows)?))
    })
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pcm_matrix_free(m: *mut PcmMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix, or 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcm_matrix_dim(m: *const PcmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Decides efficiency of the vector `num[k] / den[k]`. When efficient and
/// `out_cycle` is non-null, the certificate cycle is written there.
///
/// # Safety
/// `num` and `den` must hold `len` values, `out_efficient` must be writable
/// and `out_cycle`, if non-null, must have room for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn pcm_is_efficient(
    m: *const PcmMatrix,
    num: *const i64,
    den: *const i64,
    len: usize,
    out_efficient: *mut bool,
    out_cycle: *mut usize,
) -> PcmStatus {
    guard(|| {
        let a = matrix_ref(m)?;
        if out_efficient.is_null() {
            return Err(null("out_efficient"));
        }
        let w = WeightVector::new(fractions(num, den, len)?)?;
        let cert = is_efficient(a, &w)?;
        *out_efficient = cert.is_efficient();
        if let Some(c) = cert.cycle() {
            write_cycle(c, out_cycle);
        }
        Ok(())
    })
}

/// Decomposes the efficient set into cones, refusing when `n > cap`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcm_decompose(m: *const PcmMatrix, cap: usize, out: *mut *mut PcmDecomposition) -> PcmStatus {
    guard(|| {
        let a = matrix_ref(m)?;
        put(out, PcmDecomposition(decompose(a, cap)?))
    })
}

/// Releases a decomposition. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pcm_decomposition_free(d: *mut PcmDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of cones, or 0 for null. A consistent matrix has no cones and a
/// single ray instead.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcm_decomposition_cone_count(d: *const PcmDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.0.cones.len())
}

/// Finds a cone containing the vector. `out_found` is set to whether one
/// exists; if so and `out_cycle` is non-null its cycle is written there.
///
/// # Safety
/// Same buffer rules as [`pcm_is_efficient`].
#[no_mangle]
pub unsafe extern "C" fn pcm_decomposition_membership(
    d: *const PcmDecomposition,
    num: *const i64,
    den: *const i64,
    len: usize,
    out_found: *mut bool,
    out_cycle: *mut usize,
) -> PcmStatus {
    guard(|| {
        let d = &d.as_ref().ok_or_else(|| null("decomposition"))?.0;
        if out_found.is_null() {
            return Err(null("out_found"));
        }
        let w = WeightVector::new(fractions(num, den, len)?)?;
        if w.dim() != d.dim() {
            return Err(Error::DimensionMismatch {
                expected: d.dim(),
                found: w.dim(),
            }
            .into());
        }
        match membership(d, &w) {
            Some(c) => {
                *out_found = true;
                write_cycle(&c, out_cycle);
            }
            None => *out_found = false,
        }
        Ok(())
    })
}

/// Serializes a decomposition to JSON. Release the string with
/// [`pcm_string_free`].
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcm_decomposition_to_json(d: *const PcmDecomposition, out: *mut *mut c_char) -> PcmStatus {
    guard(|| {
        let d = &d.as_ref().ok_or_else(|| null("decomposition"))?.0;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let s = CString::new(decomposition_to_json(d))
            .map_err(|e| Failure(PcmStatus::Domain, e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pcm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn pcm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
