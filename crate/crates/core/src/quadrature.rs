//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Used as the brute-force oracle for the integral representations in
//! [`crate::specfun`], so it shares no code with them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub panels_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub panel_budget: usize,
    /// Also stop once the error estimate is below `rel_tol * |value|`.
    pub rel_tol: f64,
    /// Also stop once the error estimate is below `l1_rel_tol * ∫|f|`.
    pub l1_rel_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { panel_budget: 10_000, rel_tol: 0.0, l1_rel_tol: 0.0 }
    }
}

// Kronrod abscissae on [0, 1); odd indices are the Gauss points.
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    l1: f64,
    err: f64,
}

// ordered by error so the heap pops the worst panel
impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs_sum = (WK[7] * fc).abs();
    for i in 0..7 {
        let dx = h * XK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        k += WK[i] * (f1 + f2);
        abs_sum += WK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            g += WG[i / 2] * (f1 + f2);
        }
    }
    let value = k * h;
    // |K15 − G7| overstates the K15 error; floor it at the rounding level
    let err = ((k - g) * h).abs().max(50.0 * f64::EPSILON * abs_sum * h.abs());
    Panel { a, b, value, l1: abs_sum * h.abs(), err }
}

/// Adaptive integration on `[a, b]` with the default panel budget.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    integrate_finite_with(f, a, b, tol, &QuadConfig::default())
}

pub fn integrate_finite_with<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    config: &QuadConfig,
) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("integrate_finite", format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(domain("integrate_finite", "tolerance must be positive"));
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b);
    let mut value = first.value;
    let mut err = first.err;
    let mut l1 = first.l1;
    heap.push(first);
    let target = |value: f64, l1: f64| tol.max(config.rel_tol * value.abs()).max(config.l1_rel_tol * l1);
    loop {
        if !value.is_finite() {
            return Err(domain("integrate_finite", "integrand is not finite on the interval"));
        }
        if err <= target(value, l1) || heap.len() >= config.panel_budget {
            // re-sum to drop drift from the running totals
            let value: f64 = heap.iter().map(|p| p.value).sum();
            let err: f64 = heap.iter().map(|p| p.err).sum();
            let l1: f64 = heap.iter().map(|p| p.l1).sum();
            if err <= target(value, l1) {
                return Ok(QuadResult { value, abs_error_estimate: err, panels_used: heap.len() });
            }
            if heap.len() >= config.panel_budget {
                return Err(Error::PanelBudget { budget: config.panel_budget, err });
            }
        }
        let p = heap.pop().expect("at least one panel");
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            // interval exhausted at machine resolution; accept what we have
            heap.push(p);
            let value: f64 = heap.iter().map(|q| q.value).sum();
            let err: f64 = heap.iter().map(|q| q.err).sum();
            return Ok(QuadResult { value, abs_error_estimate: err, panels_used: heap.len() });
        }
        let left = kronrod(&f, p.a, mid);
        let right = kronrod(&f, mid, p.b);
        value += left.value + right.value - p.value;
        err += left.err + right.err - p.err;
        l1 += left.l1 + right.l1 - p.l1;
        heap.push(left);
        heap.push(right);
    }
}

const TRUNCATION_CAP: f64 = 1e6;

/// `∫_a^∞ f` for `f` eventually dominated by `e^{−decay_hint·t}`.
///
/// The cut-off `T` satisfies `e^{−decay_hint (T−a)} < 1e−18 |f(a+1)|` and is
/// pushed further out while `|f(T)|/decay_hint` is still above `tol/1000`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64, decay_hint: f64, tol: f64) -> Result<QuadResult> {
    integrate_semi_infinite_with(f, a, decay_hint, tol, &QuadConfig::default())
}

pub fn integrate_semi_infinite_with<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay_hint: f64,
    tol: f64,
    config: &QuadConfig,
) -> Result<QuadResult> {
    if !(decay_hint > 0.0) {
        return Err(domain("integrate_semi_infinite", "decay_hint must be positive"));
    }
    let scale = f(a + 1.0).abs();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Truncation { cap: TRUNCATION_CAP });
    }
    let mut len = ((-(1e-18 * scale).ln()) / decay_hint).max(1.0);
    while f(a + len).abs() / decay_hint > 1e-3 * tol {
        len *= 2.0;
        if len > TRUNCATION_CAP {
            return Err(Error::Truncation { cap: TRUNCATION_CAP });
        }
    }
    // split so the adaptive scheme sees the bulk near a
    let first = len.min(1.0 / decay_hint).max(1e-3 * len);
    let head = integrate_finite_with(&f, a, a + first, 0.5 * tol, config)?;
    let tail = integrate_finite_with(&f, a + first, a + len, 0.5 * tol, config)?;
    Ok(QuadResult {
        value: head.value + tail.value,
        abs_error_estimate: head.abs_error_estimate + tail.abs_error_estimate,
        panels_used: head.panels_used + tail.panels_used,
    })
}
