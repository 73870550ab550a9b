use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::logvalue::LogValue;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Bernoulli-number coefficients B_{2k} / (2k (2k-1)) of the Stirling series.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.trunc() {
        return 0.0;
    }
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.trunc()
}

fn ln_gamma_positive(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut prod = 1.0;
    let mut z = x;
    while z < 10.0 {
        prod *= z;
        z += 1.0;
        if prod > 1e280 {
            shift += prod.ln();
            prod = 1.0;
        }
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series - prod.ln() - shift
}

/// `(sign, ln|Γ(x)|)`; reflection for `x < 1/2`.
pub fn log_gamma(x: f64) -> Result<LogValue> {
    if x.is_nan() {
        return Err(crate::error::domain("log_gamma", "NaN argument"));
    }
    if is_pole(x) {
        return Err(Error::Pole { op: "log_gamma", x });
    }
    if x >= 0.5 {
        return Ok(LogValue::exp(ln_gamma_positive(x)));
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    let log_abs = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    Ok(LogValue::new(if s > 0.0 { 1 } else { -1 }, log_abs))
}

/// `1/Γ(x)` in log form; exactly zero at the poles of Γ.
pub fn log_rgamma(x: f64) -> LogValue {
    match log_gamma(x) {
        Ok(v) => LogValue::ONE / v,
        Err(_) => LogValue::ZERO,
    }
}

pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x)?.try_to_f64("gamma")
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(crate::error::domain("ln_gamma", "argument must be positive"));
    }
    Ok(log_gamma(x)?.log_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_half_integers() {
        let mut f = 1.0f64;
        for k in 1..30 {
            let g = log_gamma(k as f64).unwrap();
            assert_eq!(g.sign(), 1);
            assert!((g.log_abs() - f.ln()).abs() < 4e-15 * f.ln().abs().max(1.0), "k={k}");
            f *= k as f64;
        }
        let half = log_gamma(0.5).unwrap();
        assert!((half.log_abs() - PI.sqrt().ln()).abs() < 4e-15);
        let neg = log_gamma(-0.5).unwrap();
        assert_eq!(neg.sign(), -1);
        assert!((neg.log_abs() - (2.0 * PI.sqrt()).ln()).abs() < 4e-15);
    }

    #[test]
    fn signs_alternate_on_negative_axis() {
        for k in 0..8 {
            let x = -(k as f64) - 0.5;
            let expect = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(log_gamma(x).unwrap().sign(), expect);
        }
        assert!(matches!(log_gamma(-3.0), Err(Error::Pole { .. })));
        assert!(log_rgamma(0.0).is_zero());
    }

    #[test]
    fn sin_pi_exact_zeros() {
        assert_eq!(sin_pi(-4.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-1.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(2.25) - (PI / 4.0).sin()).abs() < 1e-16);
    }
}
