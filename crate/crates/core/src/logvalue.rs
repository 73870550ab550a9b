//! Signed numbers stored as `(sign, ln|x|)`.

use std::cmp::Ordering;
use std::ops::{Div, Mul, Neg};

use crate::error::{Error, Result};

/// A real number represented by its sign and the natural log of its magnitude.
///
/// `log_abs` is meaningless when `sign == 0`; it is kept at `-inf` there so that
/// comparisons on magnitude behave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: i8,
    log_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { sign: 0, log_abs: f64::NEG_INFINITY };
    pub const ONE: LogValue = LogValue { sign: 1, log_abs: 0.0 };

    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogValue { sign: sign.signum(), log_abs }
    }

    /// Positive value `e^l`.
    pub fn exp(l: f64) -> Self {
        Self::new(1, l)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogValue { sign: if x > 0.0 { 1 } else { -1 }, log_abs: x.abs().ln() }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_finite(&self) -> bool {
        self.sign == 0 || self.log_abs.is_finite()
    }

    /// Materialize; may overflow to ±inf or underflow to 0.
    pub fn to_f64(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_abs.exp(),
        }
    }

    /// Materialize, reporting overflow instead of returning an infinity.
    pub fn try_to_f64(&self, op: &'static str) -> Result<f64> {
        if self.sign != 0 && self.log_abs > 709.78 {
            return Err(Error::Overflow { op, log_abs: self.log_abs });
        }
        Ok(self.to_f64())
    }

    pub fn abs(&self) -> Self {
        LogValue { sign: self.sign.abs(), log_abs: self.log_abs }
    }

    pub fn powf(&self, p: f64) -> Self {
        debug_assert!(self.sign >= 0);
        if self.sign == 0 {
            return if p == 0.0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(1, self.log_abs * p)
    }

    /// Signed log-sum-exp of two values.
    pub fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_abs >= other.log_abs { (self, other) } else { (other, self) };
        let d = small.log_abs - big.log_abs;
        if big.sign == small.sign {
            LogValue { sign: big.sign, log_abs: big.log_abs + d.exp().ln_1p() }
        } else {
            if d == 0.0 {
                return Self::ZERO;
            }
            LogValue { sign: big.sign, log_abs: big.log_abs + (-d.exp_m1()).ln() }
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(-other)
    }

    /// Pairwise signed log-sum-exp over a slice.
    pub fn sum(values: &[LogValue]) -> Self {
        match values.len() {
            0 => Self::ZERO,
            1 => values[0],
            len => {
                let (a, b) = values.split_at(len / 2);
                Self::sum(a).add(Self::sum(b))
            }
        }
    }

    /// Order by magnitude only.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.log_abs.partial_cmp(&other.log_abs).unwrap_or(Ordering::Equal)
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue { sign: self.sign * rhs.sign, log_abs: self.log_abs + rhs.log_abs }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 {
            return LogValue::ZERO;
        }
        if rhs.sign == 0 {
            return LogValue { sign: self.sign, log_abs: f64::INFINITY };
        }
        LogValue { sign: self.sign * rhs.sign, log_abs: self.log_abs - rhs.log_abs }
    }
}

impl Neg for LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        LogValue { sign: -self.sign, log_abs: self.log_abs }
    }
}

impl From<f64> for LogValue {
    fn from(x: f64) -> Self {
        LogValue::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for &x in &[1.0, -2.5, 1e-300, -7e300, 3.25] {
            let v = LogValue::from_f64(x);
            assert!(((v.to_f64() - x) / x).abs() < 1e-15 * v.log_abs().abs().max(1.0));
            let w = LogValue::from_f64(v.to_f64());
            assert_eq!(w.sign(), v.sign());
            assert!((w.log_abs() - v.log_abs()).abs() <= 1e-15 * v.log_abs().abs().max(1.0));
        }
        assert_eq!(LogValue::from_f64(0.0), LogValue::ZERO);
    }

    #[test]
    fn arithmetic() {
        let a = LogValue::from_f64(3.0);
        let b = LogValue::from_f64(-5.0);
        assert!(((a * b).to_f64() + 15.0).abs() < 1e-13);
        assert!(((a / b).to_f64() + 0.6).abs() < 1e-15);
        assert!(((a.add(b)).to_f64() + 2.0).abs() < 1e-14);
        assert!(((b.sub(a)).to_f64() + 8.0).abs() < 1e-14);
        assert_eq!(a.add(-a), LogValue::ZERO);
    }

    #[test]
    fn huge_magnitudes() {
        let a = LogValue::exp(1000.0);
        let b = LogValue::exp(999.0);
        let s = a.add(b);
        assert!((s.log_abs() - (1000.0 + (-1.0f64).exp().ln_1p())).abs() < 1e-12);
        assert!(s.try_to_f64("t").is_err());
    }

    #[test]
    fn pairwise_sum() {
        let v: Vec<LogValue> = (1..=100).map(|i| LogValue::from_f64(i as f64)).collect();
        assert!((LogValue::sum(&v).to_f64() - 5050.0).abs() < 1e-10);
    }
}
