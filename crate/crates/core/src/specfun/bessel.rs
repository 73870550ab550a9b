//! Modified Bessel functions `I_ν` and `K_ν` of real order and argument.

use std::f64::consts::{LN_2, PI};

use super::dd::Dd;
use super::gamma::{log_rgamma, sin_pi};
use super::integrate::{exp_sinh, tanh_sinh};
use crate::error::{domain, Error, Result};
use crate::logvalue::LogValue;

const MAX_TERMS: usize = 10_000;
const INNER_TOL: f64 = 1e-15;

/// Argument thresholds for switching between evaluation paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    /// Power series up to this argument.
    pub series_max: f64,
    /// Integral representation up to this argument, asymptotic expansion beyond.
    pub integral_max: f64,
}

impl Default for Regime {
    fn default() -> Self {
        Regime { series_max: 30.0, integral_max: 1e3 }
    }
}

fn is_integer(x: f64) -> bool {
    x == x.trunc()
}

/// Power series `Σ (y/2)^{2k+ν} / (k! Γ(k+ν+1))`.
pub fn bessel_i_series(nu: f64, y: f64) -> Result<LogValue> {
    if y < 0.0 {
        return Err(domain("bessel_I", "negative argument"));
    }
    // I_{-l} = I_l for integer l
    let nu = if nu < 0.0 && is_integer(nu) { -nu } else { nu };
    if y == 0.0 {
        return match nu {
            0.0 => Ok(LogValue::ONE),
            v if v > 0.0 => Ok(LogValue::ZERO),
            _ => Err(domain("bessel_I", "unbounded at y = 0 for negative non-integer order")),
        };
    }
    let lead = LogValue::exp(nu * (0.5 * y).ln()) * log_rgamma(nu + 1.0);
    let q = 0.25 * y * y;
    let mut sum = Dd::new(1.0);
    let mut term = Dd::new(1.0);
    let mut prev = f64::INFINITY;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term = term.mul_f64(q).div_f64((kf + 1.0) * (kf + nu + 1.0));
        sum = sum + term;
        let t = term.to_f64().abs();
        if t < 1e-17 * sum.to_f64().abs() && t < prev {
            return Ok(lead * LogValue::from_f64(sum.to_f64()));
        }
        prev = t;
    }
    Err(Error::Convergence { op: "bessel_I series", terms: MAX_TERMS })
}

/// `Σ_k s^k a_k(ν) / y^k` with `a_k = Π_{i≤k} (4ν² − (2i−1)²) / (k! 8^k)` and `s = ±1`.
fn hankel_sum(nu: f64, y: f64, alternate: bool) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut sum = 1.0;
    let mut term = 1.0f64;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let mut next = term * (mu - odd * odd) / (8.0 * k as f64 * y);
        if alternate {
            next = -next;
        }
        if next == 0.0 {
            return Some(sum);
        }
        if next.abs() > term.abs() {
            return None;
        }
        sum += next;
        term = next;
        if term.abs() < 1e-17 * sum.abs() {
            return Some(sum);
        }
    }
    None
}

/// Large-argument expansion `e^y/√(2πy) Σ (−1)^k a_k(ν)/y^k`.
pub fn bessel_i_asymptotic(nu: f64, y: f64) -> Result<LogValue> {
    if y <= 0.0 {
        return Err(domain("bessel_I", "asymptotic path needs y > 0"));
    }
    let s = hankel_sum(nu, y, true).ok_or(Error::Convergence { op: "bessel_I asymptotic", terms: 200 })?;
    Ok(LogValue::exp(y - 0.5 * (2.0 * PI * y).ln()) * LogValue::from_f64(s))
}

/// `I_ν(y) = (1/π)∫₀^π e^{y cos θ} cos νθ dθ − (sin νπ/π)∫₀^∞ e^{−y cosh t − νt} dt`.
pub fn bessel_i_integral(nu: f64, y: f64) -> Result<LogValue> {
    if y <= 0.0 {
        return Err(domain("bessel_I", "integral path needs y > 0"));
    }
    // both pieces carry an e^{y} factor pulled out
    let a = tanh_sinh(
        |th| {
            let s = (0.5 * th).sin();
            LogValue::exp(-2.0 * y * s * s) * LogValue::from_f64((nu * th).cos())
        },
        0.0,
        PI,
        INNER_TOL,
    )?;
    let snu = sin_pi(nu);
    let total = if snu == 0.0 {
        a
    } else {
        let b = exp_sinh(
            |t| {
                let s = (0.5 * t).sinh();
                LogValue::exp(-2.0 * y - 2.0 * y * s * s - nu * t)
            },
            0.0,
            INNER_TOL,
        )?;
        a.sub(b * LogValue::from_f64(snu))
    };
    Ok(total * LogValue::exp(y - PI.ln()))
}

/// `I_ν(y)` in log form; never overflows.
pub fn bessel_i_log(nu: f64, y: f64) -> Result<LogValue> {
    bessel_i_log_in(nu, y, &Regime::default())
}

pub fn bessel_i_log_in(nu: f64, y: f64, regime: &Regime) -> Result<LogValue> {
    if !(y >= 0.0) {
        return Err(domain("bessel_I", format!("argument must be >= 0, got {y}")));
    }
    if y <= regime.series_max {
        bessel_i_series(nu, y)
    } else if y <= regime.integral_max {
        bessel_i_integral(nu, y)
    } else {
        bessel_i_asymptotic(nu, y).or_else(|_| bessel_i_integral(nu, y))
    }
}

/// Used inside other integrals: skips the integral regime for small orders,
/// where the asymptotic series is already at full precision beyond y = 30.
pub(crate) fn bessel_i_log_fast(nu: f64, y: f64) -> Result<LogValue> {
    if y > 30.0 && nu.abs() <= 1.0 {
        if let Ok(v) = bessel_i_asymptotic(nu, y) {
            return Ok(v);
        }
    }
    bessel_i_log(nu, y)
}

pub fn bessel_i(nu: f64, y: f64) -> Result<f64> {
    bessel_i_log(nu, y)?.try_to_f64("bessel_I")
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `K_ν(y) = ∫₀^∞ e^{−y cosh t} cosh νt dt` by the trapezoidal rule, which
/// converges geometrically for this even, entire integrand.
pub fn bessel_k_integral(nu: f64, y: f64) -> Result<LogValue> {
    if !(y > 0.0) {
        return Err(domain("bessel_K", format!("argument must be > 0, got {y}")));
    }
    let nu = nu.abs();
    let logf = |t: f64| {
        let s = (0.5 * t).sinh();
        -2.0 * y * s * s + ln_cosh(nu * t)
    };
    let trapezoid = |h: f64| -> LogValue {
        let mut terms = vec![LogValue::exp(logf(0.0) - LN_2)];
        let mut max = logf(0.0);
        let mut prev = max;
        let mut k = 1usize;
        loop {
            let v = logf(k as f64 * h);
            terms.push(LogValue::exp(v));
            if v > max {
                max = v;
            }
            if v < max - 45.0 && v < prev {
                break;
            }
            prev = v;
            k += 1;
        }
        LogValue::sum(&terms) * LogValue::exp(h.ln())
    };
    let mut h = 0.5f64.min(1.0 / y.sqrt());
    let mut prev = trapezoid(h);
    for _ in 0..10 {
        h *= 0.5;
        let cur = trapezoid(h);
        let diff = cur.sub(prev);
        if diff.is_zero() || diff.log_abs() - cur.log_abs() < (1e-15f64).ln() {
            return Ok(cur * LogValue::exp(-y));
        }
        prev = cur;
    }
    Err(Error::Convergence { op: "bessel_K integral", terms: 10 })
}

/// Large-argument expansion `√(π/2y) e^{−y} Σ a_k(ν)/y^k`.
pub fn bessel_k_asymptotic(nu: f64, y: f64) -> Result<LogValue> {
    if !(y > 0.0) {
        return Err(domain("bessel_K", "argument must be > 0"));
    }
    let s = hankel_sum(nu, y, false).ok_or(Error::Convergence { op: "bessel_K asymptotic", terms: 200 })?;
    Ok(LogValue::exp(0.5 * (PI / (2.0 * y)).ln() - y) * LogValue::from_f64(s))
}

/// Defining formula `π/(2 sin νπ) (I_{−ν} − I_ν)`; non-integer ν only.
/// Loses digits to cancellation as y grows.
pub fn bessel_k_series(nu: f64, y: f64) -> Result<LogValue> {
    if is_integer(nu) {
        return Err(domain("bessel_K", "defining formula is singular at integer order"));
    }
    if !(y > 0.0) {
        return Err(domain("bessel_K", "argument must be > 0"));
    }
    let diff = bessel_i_series(-nu, y)?.sub(bessel_i_series(nu, y)?);
    Ok(diff * LogValue::from_f64(PI / (2.0 * sin_pi(nu))))
}

/// `K_ν(y)` in log form.
pub fn bessel_k_log(nu: f64, y: f64) -> Result<LogValue> {
    bessel_k_log_in(nu, y, &Regime::default())
}

pub fn bessel_k_log_in(nu: f64, y: f64, regime: &Regime) -> Result<LogValue> {
    if !(y > 0.0) {
        return Err(domain("bessel_K", format!("argument must be > 0, got {y}")));
    }
    if y <= regime.integral_max {
        bessel_k_integral(nu, y)
    } else {
        bessel_k_asymptotic(nu, y).or_else(|_| bessel_k_integral(nu, y))
    }
}

pub fn bessel_k(nu: f64, y: f64) -> Result<f64> {
    Ok(bessel_k_log(nu, y)?.to_f64())
}
