//! Log-domain double-exponential quadrature used inside the special functions.
//!
//! Kept separate from `crate::quadrature` on purpose: the quadrature module is
//! the oracle these evaluations are tested against.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::logvalue::LogValue;

// node distances reach ~1e-300 from the ends, enough for x^{-0.99}-type singularities
const T_MAX: f64 = 6.1;
const H0: f64 = 0.5;
const MAX_LEVEL: u32 = 9;
// level-to-level differences stall here from rounding alone (scaled by
// |ln value|, the precision of the log representation)
const NOISE: f64 = 64.0 * f64::EPSILON;

/// Tanh-sinh rule on `[a, b]` for an integrand given in log form.
///
/// Nodes near either end are produced from the distance to that end, so
/// algebraic endpoint singularities at `a` are evaluated without cancellation.
pub(crate) fn tanh_sinh<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<LogValue>
where
    F: Fn(f64) -> LogValue,
{
    if !(b > a) {
        return Ok(LogValue::ZERO);
    }
    let half = 0.5 * (b - a);
    let ln_half = half.ln();
    let node = |t: f64| -> Option<LogValue> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the nearer endpoint
        let dist = half * 2.0 * e / (1.0 + e);
        if dist == 0.0 {
            return None;
        }
        let x = if u < 0.0 { a + dist } else { b - dist };
        if !(x > a && x < b) {
            return None;
        }
        let ln_w = ln_half + FRAC_PI_2.ln() + t.cosh().ln() + 4f64.ln() - 2.0 * u.abs() - 2.0 * e.ln_1p();
        let fx = f(x);
        Some(fx * LogValue::exp(ln_w))
    };

    let mut terms: Vec<LogValue> = Vec::new();
    if let Some(v) = node(0.0) {
        terms.push(v);
    }
    let n0 = (T_MAX / H0).round() as i64;
    for k in 1..=n0 {
        let t = k as f64 * H0;
        terms.extend(node(t));
        terms.extend(node(-t));
    }
    let mut total = LogValue::sum(&terms);
    let mut prev = total * LogValue::exp(H0.ln());
    let mut h = H0;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        terms.clear();
        let count = (T_MAX / h).round() as i64;
        let mut k = 1;
        while k <= count {
            let t = k as f64 * h;
            terms.extend(node(t));
            terms.extend(node(-t));
            k += 2;
        }
        total = total.add(LogValue::sum(&terms));
        let cur = total * LogValue::exp(h.ln());
        let diff = cur.sub(prev);
        if level >= 3
            && (diff.is_zero()
                || diff.log_abs() <= cur.log_abs() + rel_tol.max(NOISE * cur.log_abs().abs().max(1.0)).ln())
        {
            return Ok(cur);
        }
        if cur.is_zero() && prev.is_zero() && level >= 3 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Convergence { op: "tanh_sinh", terms: terms.len() })
}

/// Integral over `[0, inf)` of a unimodal-ish integrand, split at its peak.
///
/// `scale` is a rough location of the mass; the peak is located on a
/// geometric scan around it.
pub(crate) fn positive_axis<F>(f: F, scale: f64, rel_tol: f64) -> Result<LogValue>
where
    F: Fn(f64) -> LogValue,
{
    let scale = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
    let lf = |t: f64| {
        let v = f(t);
        if v.is_zero() {
            f64::NEG_INFINITY
        } else {
            v.log_abs()
        }
    };
    let step = 2f64.sqrt();
    let mut best_t = scale;
    let mut best = lf(scale);
    let mut t = scale;
    for _ in 0..80 {
        t /= step;
        let v = lf(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    // scan upward until the integrand has dropped far below the running max
    let mut t = scale;
    let mut end = f64::NAN;
    for _ in 0..400 {
        t *= step;
        let v = lf(t);
        if v > best {
            best = v;
            best_t = t;
        } else if v < best - 60.0 {
            end = t;
            break;
        }
    }
    if !end.is_finite() {
        return Err(Error::Truncation { cap: t });
    }
    // a peak pinned at the origin is an endpoint singularity; split at the scale instead
    let split = if best_t < 1e-6 * scale { scale } else { best_t };
    let left = tanh_sinh(&f, 0.0, split, rel_tol)?;
    let right = tanh_sinh(&f, split, end, rel_tol)?;
    Ok(left.add(right))
}

/// Integral over `[a, inf)` using the exp-sinh map, for integrands with
/// at least exponential decay.
pub(crate) fn exp_sinh<F>(f: F, a: f64, rel_tol: f64) -> Result<LogValue>
where
    F: Fn(f64) -> LogValue,
{
    let node = |t: f64| -> Option<LogValue> {
        let s = FRAC_PI_2 * t.sinh();
        if s > 700.0 {
            return None;
        }
        let dist = s.exp();
        if dist == 0.0 {
            return None;
        }
        let ln_w = FRAC_PI_2.ln() + t.cosh().ln() + s;
        Some(f(a + dist) * LogValue::exp(ln_w))
    };
    let tmin = -T_MAX;
    let tmax = 3.2;
    let mut h = H0;
    let mut terms = Vec::new();
    let mut k = (tmin / h).ceil() as i64;
    while k as f64 * h <= tmax {
        terms.extend(node(k as f64 * h));
        k += 1;
    }
    let mut total = LogValue::sum(&terms);
    let mut prev = total * LogValue::exp(h.ln());
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        terms.clear();
        let mut k = (tmin / h).ceil() as i64;
        if k % 2 == 0 {
            k += 1;
        }
        while k as f64 * h <= tmax {
            terms.extend(node(k as f64 * h));
            k += 2;
        }
        total = total.add(LogValue::sum(&terms));
        let cur = total * LogValue::exp(h.ln());
        let diff = cur.sub(prev);
        if level >= 3
            && (diff.is_zero()
                || diff.log_abs() <= cur.log_abs() + rel_tol.max(NOISE * cur.log_abs().abs().max(1.0)).ln())
        {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Convergence { op: "exp_sinh", terms: terms.len() })
}
