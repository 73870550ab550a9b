//! C ABI over `calabi-core`.
//!
//! Every entry point returns a [`CalabiStatus`] and writes results through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`calabi_last_error`]. Handles are opaque and must be released with
//! their `_free` function.
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the access the function
//! makes. Handles must come from this library and be freed exactly once.
//! Null pointers are reported as [`CalabiStatus::NullPointer`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use calabi_core::calabi_ode::{self, FundamentalPair, Mode};
use calabi_core::poisson::{self, ModeCoefficient, ModeSolution, Xi};
use calabi_core::spectral::{CalabiParams, SpectrumTable, ToySpectrumConfig};
use calabi_core::{specfun, Error, LogValue};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalabiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Pole = 4,
    Overflow = 5,
    Convergence = 6,
    Numerical = 7,
    Panic = 8,
}

/// Signed value stored as `sign · exp(log_abs)`; zero has sign 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalabiLogValue {
    pub sign: i8,
    pub log_abs: f64,
}

impl From<LogValue> for CalabiLogValue {
    fn from(v: LogValue) -> Self {
        CalabiLogValue { sign: v.sign(), log_abs: v.log_abs() }
    }
}

/// Fundamental solution pair of one mode.
pub struct CalabiPair(FundamentalPair);

/// Spectrum table sorted by eigenvalue.
pub struct CalabiSpectrum(SpectrumTable);

/// Particular solution of one mode equation.
pub struct CalabiSolution(ModeSolution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CalabiStatus {
    match e {
        Error::Domain { .. } => CalabiStatus::Domain,
        Error::Pole { .. } => CalabiStatus::Pole,
        Error::Overflow { .. } => CalabiStatus::Overflow,
        Error::Convergence { .. } | Error::PanelBudget { .. } | Error::Truncation { .. } => CalabiStatus::Convergence,
        Error::InvalidMode(_) | Error::InvalidParams(_) | Error::NormalizationMissing => CalabiStatus::InvalidArgument,
        _ => CalabiStatus::Numerical,
    }
}

/// Runs `f`, records its error and converts panics.
fn guard(f: impl FnOnce() -> Result<(), (CalabiStatus, String)>) -> CalabiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CalabiStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CalabiStatus::Panic
        }
    }
}

fn lift<T>(r: calabi_core::Result<T>) -> Result<T, (CalabiStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, (CalabiStatus, String)> {
    // SAFETY: caller passes either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or((CalabiStatus::NullPointer, "null output pointer".into()))
}

fn in_ref<'a, T>(p: *const T) -> Result<&'a T, (CalabiStatus, String)> {
    // SAFETY: caller passes either null or a handle created by this library.
    unsafe { p.as_ref() }.ok_or((CalabiStatus::NullPointer, "null handle".into()))
}

fn write_log(out: *mut CalabiLogValue, r: calabi_core::Result<LogValue>) -> CalabiStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = lift(r)?.into();
        Ok(())
    })
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn calabi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `log I_nu(y)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_bessel_i_log(nu: f64, y: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    write_log(out, specfun::bessel_i_log(nu, y))
}

/// `log K_nu(y)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_bessel_k_log(nu: f64, y: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    write_log(out, specfun::bessel_k_log(nu, y))
}

/// `log M(beta, alpha, y)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_kummer_m_log(beta: f64, alpha: f64, y: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    write_log(out, specfun::kummer_m_log(beta, alpha, y))
}

/// `log U(beta, alpha, y)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_tricomi_u_log(beta: f64, alpha: f64, y: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    write_log(out, specfun::tricomi_u_log(beta, alpha, y))
}

/// Modified Tricomi function `T(beta, alpha, y)` for `y < 0`.
#[no_mangle]
pub unsafe extern "C" fn calabi_tri_t(beta: f64, alpha: f64, y: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    write_log(out, specfun::tri_t(beta, alpha, y))
}

/// `Γ(x)` in log form, sign included.
#[no_mangle]
pub unsafe extern "C" fn calabi_log_gamma(x: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    write_log(out, specfun::log_gamma(x))
}

/// Builds the fundamental pair of mode `(k, j, lambda)` in dimension `n`.
#[no_mangle]
pub unsafe extern "C" fn calabi_pair_new(
    k: usize,
    j: u32,
    lambda: f64,
    n: u32,
    out: *mut *mut CalabiPair,
) -> CalabiStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let mode = lift(Mode::new(k, j, lambda))?;
        let pair = lift(calabi_ode::fundamental_pair(&mode, n))?;
        *out = Box::into_raw(Box::new(CalabiPair(pair)));
        Ok(())
    })
}

/// Releases a pair; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn calabi_pair_free(pair: *mut CalabiPair) {
    if !pair.is_null() {
        // SAFETY: the pointer came from `calabi_pair_new` and is freed once.
        drop(unsafe { Box::from_raw(pair) });
    }
}

/// Growing solution `G(z)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_pair_log_g(pair: *const CalabiPair, z: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    guard(|| {
        let p = in_ref(pair)?;
        *out_ref(out)? = lift(p.0.log_g(z))?.into();
        Ok(())
    })
}

/// Decaying solution `D(z)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_pair_log_d(pair: *const CalabiPair, z: f64, out: *mut CalabiLogValue) -> CalabiStatus {
    guard(|| {
        let p = in_ref(pair)?;
        *out_ref(out)? = lift(p.0.log_d(z))?.into();
        Ok(())
    })
}

/// `D'(z)`.
#[no_mangle]
pub unsafe extern "C" fn calabi_pair_log_d_prime(
    pair: *const CalabiPair,
    z: f64,
    out: *mut CalabiLogValue,
) -> CalabiStatus {
    guard(|| {
        let p = in_ref(pair)?;
        *out_ref(out)? = lift(p.0.log_d_prime(z))?.into();
        Ok(())
    })
}

/// Closed-form Wronskian `G D' - G' D`.
#[no_mangle]
pub unsafe extern "C" fn calabi_pair_wronskian(pair: *const CalabiPair, out: *mut f64) -> CalabiStatus {
    guard(|| {
        let p = in_ref(pair)?;
        *out_ref(out)? = p.0.w_const;
        Ok(())
    })
}

/// Synthetic spectrum with eigenvalue ladders per weight.
#[no_mangle]
pub unsafe extern "C" fn calabi_spectrum_toy(
    n: u32,
    z0: f64,
    lambda_d: f64,
    delta: f64,
    j_max: u32,
    per_weight: usize,
    seed: u64,
    jitter: f64,
    out: *mut *mut CalabiSpectrum,
) -> CalabiStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let params = lift(CalabiParams::new(n, z0, lambda_d, delta))?;
        let cfg = ToySpectrumConfig { j_max, per_weight, seed, jitter };
        let table = lift(calabi_core::spectral::toy_spectrum_with(&params, &cfg))?;
        *out = Box::into_raw(Box::new(CalabiSpectrum(table)));
        Ok(())
    })
}

/// Reads a table in the text format written by the CLI. `text` must be
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn calabi_spectrum_parse(text: *const c_char, out: *mut *mut CalabiSpectrum) -> CalabiStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err((CalabiStatus::NullPointer, "null text".into()));
        }
        // SAFETY: checked non-null; the caller guarantees termination.
        let s = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|_| (CalabiStatus::InvalidArgument, "text is not UTF-8".to_string()))?;
        let table = lift(SpectrumTable::parse(s))?;
        *out = Box::into_raw(Box::new(CalabiSpectrum(table)));
        Ok(())
    })
}

/// Releases a spectrum; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn calabi_spectrum_free(spec: *mut CalabiSpectrum) {
    if !spec.is_null() {
        // SAFETY: the pointer came from this library and is freed once.
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Number of modes in the table.
#[no_mangle]
pub unsafe extern "C" fn calabi_spectrum_len(spec: *const CalabiSpectrum, out: *mut usize) -> CalabiStatus {
    guard(|| {
        *out_ref(out)? = in_ref(spec)?.0.len();
        Ok(())
    })
}

/// Mode at sorted position `index`.
#[no_mangle]
pub unsafe extern "C" fn calabi_spectrum_mode(
    spec: *const CalabiSpectrum,
    index: usize,
    k: *mut usize,
    j: *mut u32,
    lambda: *mut f64,
    big_lambda: *mut f64,
) -> CalabiStatus {
    guard(|| {
        let s = in_ref(spec)?;
        let m = s
            .0
            .modes()
            .get(index)
            .ok_or((CalabiStatus::InvalidArgument, format!("index {index} out of range for {} modes", s.0.len())))?;
        *out_ref(k)? = m.mode.k;
        *out_ref(j)? = m.mode.j;
        *out_ref(lambda)? = m.mode.lambda;
        *out_ref(big_lambda)? = m.big_lambda;
        Ok(())
    })
}

/// Solves one mode with source `amp · exp(eta0 · z^{n/2})` on `[z1, z_max]`.
#[no_mangle]
pub unsafe extern "C" fn calabi_solve_mode_exp(
    k: usize,
    j: u32,
    lambda: f64,
    n: u32,
    amp: f64,
    eta0: f64,
    z1: f64,
    z_max: f64,
    out: *mut *mut CalabiSolution,
) -> CalabiStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let mode = lift(Mode::new(k, j, lambda))?;
        let coeff = ModeCoefficient::new(k, Xi::Exponential { amp, eta0 });
        let sol = lift(poisson::solve_mode(&mode, n, &coeff, z1, z_max))?;
        *out = Box::into_raw(Box::new(CalabiSolution(sol)));
        Ok(())
    })
}

/// Value of the solution at `z`.
#[no_mangle]
pub unsafe extern "C" fn calabi_solution_eval(sol: *const CalabiSolution, z: f64, out: *mut f64) -> CalabiStatus {
    guard(|| {
        let s = in_ref(sol)?;
        *out_ref(out)? = lift(s.0.eval(z))?;
        Ok(())
    })
}

/// Releases a solution; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn calabi_solution_free(sol: *mut CalabiSolution) {
    if !sol.is_null() {
        // SAFETY: the pointer came from this library and is freed once.
        drop(unsafe { Box::from_raw(sol) });
    }
}
