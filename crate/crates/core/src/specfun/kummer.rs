//! Confluent hypergeometric functions: Kummer `M`, Tricomi `U`, and the
//! decaying negative-axis solution `T̃(β, α, y) = e^y U(α−β, α, −y)`.
//!
//! Parameter order follows `M(β, α, y)`: first the numerator parameter.

use super::bessel::bessel_i_log_fast;
use super::dd::Dd;
use super::gamma::{log_gamma, log_rgamma};
use super::integrate::positive_axis;
use crate::error::{domain, Error, Result};
use crate::logvalue::LogValue;

const MAX_TERMS: usize = 10_000;
const INNER_TOL: f64 = 1e-15;

/// Below this the direct alternating series is not used.
pub const NEGATIVE_SWITCH: f64 = -5.0;
pub const SERIES_MAX: f64 = 30.0;
pub const INTEGRAL_MAX: f64 = 1e3;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.trunc()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if is_nonpositive_integer(alpha) {
        return Err(Error::Pole { op: "kummer_M", x: alpha });
    }
    if !alpha.is_finite() {
        return Err(domain("kummer_M", "non-finite parameter"));
    }
    Ok(())
}

/// Direct power series `Σ (β)_k/(α)_k y^k/k!`, summed in double-double.
///
/// No regime switching; this is the raw definition.
pub fn kummer_m_series(beta: f64, alpha: f64, y: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let mut sum = Dd::new(1.0);
    let mut term = Dd::new(1.0);
    let mut prev = f64::INFINITY;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num = Dd::new(beta) + Dd::new(kf);
        if num.hi == 0.0 && num.lo == 0.0 {
            return Ok(sum.to_f64());
        }
        let den = (Dd::new(alpha) + Dd::new(kf)).mul_f64(kf + 1.0);
        term = (term * num).mul_f64(y).div(den);
        sum = sum + term;
        let t = term.to_f64().abs();
        if t < 1e-17 * sum.to_f64().abs() && t < prev {
            return Ok(sum.to_f64());
        }
        prev = t;
    }
    Err(Error::Convergence { op: "kummer_M series", terms: MAX_TERMS })
}

/// `M(β, α, y)` through the Bessel-integral representation (needs α > β, y ≤ 0):
/// `Γ(α)/Γ(α−β) e^y (−y)^{(1−α)/2} ∫₀^∞ e^{−t} t^{(α−1)/2−β} I_{α−1}(2√(−yt)) dt`.
pub fn kummer_m_via_bessel(beta: f64, alpha: f64, y: f64) -> Result<LogValue> {
    check_alpha(alpha)?;
    if y > 0.0 {
        return Err(domain("kummer_M_via_bessel", "needs y <= 0"));
    }
    if !(alpha > beta) {
        return Err(domain("kummer_M_via_bessel", "needs alpha > beta"));
    }
    if y == 0.0 {
        return Ok(LogValue::ONE);
    }
    let x = -y;
    let nu = alpha - 1.0;
    let p = 0.5 * (alpha - 1.0) - beta;
    let q = alpha - 1.0 - beta;
    let integrand = |t: f64| -> LogValue {
        match bessel_i_log_fast(nu, 2.0 * (x * t).sqrt()) {
            Ok(i) => LogValue::exp(p * t.ln() - t) * i,
            Err(_) => LogValue::ZERO,
        }
    };
    // mass sits near t ≈ x for large x and near t ≈ Q for small x
    let scale = (x + q).max(1.0);
    let integral = positive_axis(integrand, scale, INNER_TOL)?;
    let pre = log_gamma(alpha)? * log_rgamma(alpha - beta) * LogValue::exp(y + 0.5 * (1.0 - alpha) * x.ln());
    Ok(pre * integral)
}

/// Large-|y| expansion on the negative axis:
/// `Γ(α)/Γ(α−β) (−y)^{−β} Σ_s (β)_s (1+β−α)_s / (s! (−y)^s)`.
fn kummer_m_asymptotic_negative(beta: f64, alpha: f64, y: f64) -> Option<LogValue> {
    let x = -y;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for s in 0..500 {
        let sf = s as f64;
        let next = term * (beta + sf) * (1.0 + beta - alpha + sf) / ((sf + 1.0) * x);
        if next == 0.0 {
            break;
        }
        if next.abs() > term.abs() {
            return None;
        }
        sum += next;
        term = next;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    let pre = log_gamma(alpha).ok()? * log_rgamma(alpha - beta) * LogValue::exp(-beta * x.ln());
    Some(pre * LogValue::from_f64(sum))
}

/// `M(β, α, y)` for y < 0 (any magnitude) when α > β.
fn negative_axis(beta: f64, alpha: f64, y: f64) -> Result<LogValue> {
    if y >= NEGATIVE_SWITCH {
        return Ok(LogValue::from_f64(kummer_m_series(beta, alpha, y)?));
    }
    if y >= -SERIES_MAX {
        // Kummer's transformation: sign-definite series on the positive side
        let s = kummer_m_series(alpha - beta, alpha, -y)?;
        return Ok(LogValue::exp(y) * LogValue::from_f64(s));
    }
    if !(alpha > beta) {
        return Err(Error::Unsupported { op: "kummer_M", msg: format!("y = {y} < -30 needs alpha > beta") });
    }
    if y < -INTEGRAL_MAX {
        if let Some(v) = kummer_m_asymptotic_negative(beta, alpha, y) {
            return Ok(v);
        }
    }
    kummer_m_via_bessel(beta, alpha, y)
}

/// `M(β, α, y)` in log form.
pub fn kummer_m_log(beta: f64, alpha: f64, y: f64) -> Result<LogValue> {
    check_alpha(alpha)?;
    if !(beta.is_finite() && y.is_finite()) {
        return Err(domain("kummer_M", "non-finite argument"));
    }
    if y == 0.0 || beta == 0.0 {
        return Ok(LogValue::ONE);
    }
    if beta == alpha {
        return Ok(LogValue::exp(y));
    }
    if is_nonpositive_integer(beta) && (y < 0.0 || y <= SERIES_MAX) {
        // terminating; for y < 0 every term has the same sign
        return Ok(LogValue::from_f64(kummer_m_series(beta, alpha, y)?));
    }
    if y < 0.0 {
        return negative_axis(beta, alpha, y);
    }
    if y <= SERIES_MAX {
        return Ok(LogValue::from_f64(kummer_m_series(beta, alpha, y)?));
    }
    if beta > 0.0 {
        // M(β, α, y) = e^y M(α−β, α, −y) and α > α−β
        return Ok(LogValue::exp(y) * negative_axis(alpha - beta, alpha, -y)?);
    }
    Err(Error::Unsupported { op: "kummer_M", msg: format!("y = {y} > 30 with beta = {beta} <= 0") })
}

pub fn kummer_m(beta: f64, alpha: f64, y: f64) -> Result<f64> {
    kummer_m_log(beta, alpha, y)?.try_to_f64("kummer_M")
}

/// `U(β, α, y) = (1/Γ(β)) ∫₀^∞ e^{−yt} t^{β−1}(1+t)^{α−β−1} dt`, β > 0, y > 0.
pub fn tricomi_u_log(beta: f64, alpha: f64, y: f64) -> Result<LogValue> {
    if !(beta > 0.0) {
        return Err(domain("tricomi_U", format!("needs beta > 0, got {beta}")));
    }
    if !(y > 0.0) {
        return Err(domain("tricomi_U", format!("needs y > 0, got {y}")));
    }
    // s = y t: y^{−β}/Γ(β) ∫ e^{−s} s^{β−1} (1 + s/y)^{α−β−1} ds
    let c = alpha - beta - 1.0;
    let integrand = |s: f64| LogValue::exp(-s + (beta - 1.0) * s.ln() + c * (s / y).ln_1p());
    // critical point of the exponent: s² + (y − α + 2)s − (β−1)y = 0
    let b = y - alpha + 2.0;
    let disc = b * b + 4.0 * (beta - 1.0) * y;
    let peak = if disc >= 0.0 { 0.5 * (-b + disc.sqrt()) } else { 0.0 };
    let integral = positive_axis(integrand, peak.max(1.0), INNER_TOL)?;
    Ok(integral * LogValue::exp(-beta * y.ln()) * log_rgamma(beta))
}

pub fn tricomi_u(beta: f64, alpha: f64, y: f64) -> Result<f64> {
    tricomi_u_log(beta, alpha, y)?.try_to_f64("tricomi_U")
}

/// Connection formula
/// `U = Γ(1−α)/Γ(1+β−α) M(β,α,y) + Γ(α−1)/Γ(β) y^{1−α} M(1+β−α, 2−α, y)`;
/// α must not be an integer. Works for β ≤ 0 where the integral does not.
/// Both terms grow like `e^y` and cancel, so accuracy degrades for large `y`.
pub fn tricomi_u_connection(beta: f64, alpha: f64, y: f64) -> Result<LogValue> {
    if alpha == alpha.trunc() {
        return Err(domain("tricomi_U", "connection formula needs non-integer alpha"));
    }
    if !(y > 0.0) {
        return Err(domain("tricomi_U", "needs y > 0"));
    }
    let first = log_gamma(1.0 - alpha)? * log_rgamma(1.0 + beta - alpha) * kummer_m_log(beta, alpha, y)?;
    let second = log_gamma(alpha - 1.0)?
        * log_rgamma(beta)
        * LogValue::exp((1.0 - alpha) * y.ln())
        * kummer_m_log(1.0 + beta - alpha, 2.0 - alpha, y)?;
    Ok(first.add(second))
}

/// `T̃(β, α, y) = e^y U(α−β, α, −y)` for α > β, y < 0.
pub fn tri_t(beta: f64, alpha: f64, y: f64) -> Result<LogValue> {
    if !(y < 0.0) {
        return Err(domain("tri_T", format!("needs y < 0, got {y}")));
    }
    if !(alpha > beta) {
        return Err(domain("tri_T", "needs alpha > beta"));
    }
    Ok(LogValue::exp(y) * tricomi_u_log(alpha - beta, alpha, -y)?)
}

/// `(I_ν(y), K_ν(y))` computed through `M` and `U`:
/// `I_ν = (y/2)^ν e^{−y}/Γ(ν+1) M(ν+½, 2ν+1, 2y)`, `K_ν = √π (2y)^ν e^{−y} U(ν+½, 2ν+1, 2y)`.
pub fn bessel_hypergeom_bridge_log(nu: f64, y: f64) -> Result<(LogValue, LogValue)> {
    if !(nu > 0.0) || !(y > 0.0) {
        return Err(domain("bessel_hypergeom_bridge", "needs nu > 0 and y > 0"));
    }
    let i = LogValue::exp(nu * (0.5 * y).ln() - y)
        * log_rgamma(nu + 1.0)
        * kummer_m_log(nu + 0.5, 2.0 * nu + 1.0, 2.0 * y)?;
    let k = LogValue::exp(0.5 * std::f64::consts::PI.ln() + nu * (2.0 * y).ln() - y)
        * tricomi_u_log(nu + 0.5, 2.0 * nu + 1.0, 2.0 * y)?;
    Ok((i, k))
}

pub fn bessel_hypergeom_bridge(nu: f64, y: f64) -> Result<(f64, f64)> {
    let (i, k) = bessel_hypergeom_bridge_log(nu, y)?;
    Ok((i.try_to_f64("bessel_hypergeom_bridge")?, k.to_f64()))
}
