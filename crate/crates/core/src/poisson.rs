//! Per-mode particular solutions by variation of parameters, spectral
//! synthesis with a tail bound, and growth classification of harmonic data.

use std::cell::RefCell;

use rayon::prelude::*;

use crate::calabi_ode::{fundamental_pair, FundamentalPair, Mode};
use crate::error::{domain, Error, Result};
use crate::logvalue::LogValue;
use crate::quadrature::{integrate_finite_with, QuadConfig};
use crate::spectral::{eigenfunction_sup_exponent, fourier_decay_bound, SpectralMode, SpectrumTable};

/// Stop the inner quadratures at this fraction of `∫|integrand|`.
const QUAD_TOL: f64 = 1e-13;
/// The `∫_z^∞` integral is cut where its log-envelope has fallen this many nats.
const TAIL_NATS: f64 = 40.0;
const MAX_DOUBLINGS: usize = 80;

/// Natural cubic spline through `(x_i, y_i)`; zero outside `[x_0, x_last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn natural(x: Vec<f64>, y: Vec<f64>) -> Result<CubicSpline> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::InvalidParams("spline needs >= 2 points and equal lengths".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) || x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("spline abscissae must be finite and strictly increasing".into()));
        }
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal system for interior second derivatives
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                diag[i] = 2.0 * (h0 + h1);
                rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            }
            for i in 2..n - 1 {
                let w = (x[i] - x[i - 1]) / diag[i - 1];
                diag[i] -= w * (x[i] - x[i - 1]);
                rhs[i] -= w * rhs[i - 1];
            }
            for i in (1..n - 1).rev() {
                m[i] = (rhs[i] - (x[i + 1] - x[i]) * m[i + 1]) / diag[i];
            }
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        if !(t >= self.x[0] && t <= self.x[n - 1]) {
            return 0.0;
        }
        let i = self.x.partition_point(|&v| v <= t).clamp(1, n - 1) - 1;
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

/// Right-hand side `ξ_k(z)` of one mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Xi {
    Zero,
    Constant(f64),
    /// `amp · e^{eta0 · z^{n/2}}`.
    Exponential {
        amp: f64,
        eta0: f64,
    },
    Sampled(CubicSpline),
}

impl Xi {
    pub fn eval(&self, n: u32, z: f64) -> f64 {
        match self {
            Xi::Zero => 0.0,
            Xi::Constant(c) => *c,
            Xi::Exponential { amp, eta0 } => amp * (eta0 * z.powf(0.5 * f64::from(n))).exp(),
            Xi::Sampled(s) => s.eval(z),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Xi::Zero => true,
            Xi::Constant(c) => *c == 0.0,
            Xi::Exponential { amp, .. } => *amp == 0.0,
            Xi::Sampled(s) => s.values().iter().all(|&v| v == 0.0),
        }
    }

    /// Growth rate in `z^{n/2}` of an envelope of `|ξ|`.
    fn rate(&self) -> f64 {
        match self {
            Xi::Exponential { eta0, .. } => *eta0,
            _ => 0.0,
        }
    }

    fn support(&self) -> (f64, f64) {
        match self {
            Xi::Sampled(s) => (s.knots()[0], *s.knots().last().expect("non-empty")),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficient {
    /// Position of the mode in the sorted spectrum table.
    pub mode_index: usize,
    pub xi: Xi,
}

impl ModeCoefficient {
    pub fn new(mode_index: usize, xi: Xi) -> ModeCoefficient {
        ModeCoefficient { mode_index, xi }
    }

    pub fn sampled(mode_index: usize, z: Vec<f64>, values: Vec<f64>) -> Result<ModeCoefficient> {
        Ok(ModeCoefficient { mode_index, xi: Xi::Sampled(CubicSpline::natural(z, values)?) })
    }
}

/// Runs a fallible integrand through the adaptive quadrature, reporting the
/// integrand's own error rather than a generic non-finite failure.
fn quad<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let failure = RefCell::new(None);
    let g = |t: f64| match f(t) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let cfg = QuadConfig { l1_rel_tol: QUAD_TOL, ..QuadConfig::default() };
    let r = integrate_finite_with(g, a, b, f64::MIN_POSITIVE, &cfg);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

/// Particular solution `u_k` of one mode.
#[derive(Debug, Clone)]
pub struct ModeSolution {
    pub mode: Mode,
    pub n: u32,
    pub z1: f64,
    pub z_max: f64,
    pub xi: Xi,
    pair: FundamentalPair,
}

pub fn solve_mode(mode: &Mode, n: u32, xi: &ModeCoefficient, z1: f64, z_max: f64) -> Result<ModeSolution> {
    if !(z1 >= 1.0 && z_max > z1 && z_max.is_finite()) {
        return Err(domain("solve_mode", format!("need 1 <= z1 < z_max, got [{z1}, {z_max}]")));
    }
    if matches!(xi.xi, Xi::Sampled(_)) {
        let (a, b) = xi.xi.support();
        if a < z1 || b > z_max {
            return Err(domain("solve_mode", format!("samples span [{a}, {b}], outside [{z1}, {z_max}]")));
        }
    }
    if let Xi::Exponential { amp, eta0 } = xi.xi {
        if !(amp.is_finite() && eta0.is_finite()) {
            return Err(domain("solve_mode", "non-finite right-hand side parameters"));
        }
    }
    let pair = fundamental_pair(mode, n)?;
    Ok(ModeSolution { mode: *mode, n, z1, z_max, xi: xi.xi.clone(), pair })
}

impl ModeSolution {
    pub fn pair(&self) -> &FundamentalPair {
        &self.pair
    }

    fn weight(&self, r: f64) -> f64 {
        self.xi.eval(self.n, r) * r.powi(self.n as i32 - 1)
    }

    /// Where the `∫_z^∞ D(r)/D(z) ξ r^{n−1}` envelope has dropped by [`TAIL_NATS`].
    fn tail_cutoff(&self, z: f64, ld: f64) -> Result<f64> {
        let half = 0.5 * f64::from(self.n);
        let eta = self.xi.rate();
        let slope = (self.pair.log_d_prime(z)? / self.pair.log_d(z)?).to_f64().abs();
        let tau = 1.0 / slope.max(1e-3);
        let zs = z.powf(half);
        for k in 0..MAX_DOUBLINGS {
            let r = z + tau * 2f64.powi(k as i32);
            let env =
                self.pair.log_d(r)?.log_abs() - ld + eta * (r.powf(half) - zs) + f64::from(self.n - 1) * (r / z).ln();
            if env < -TAIL_NATS {
                return Ok(r);
            }
        }
        Err(Error::Convergence { op: "solve_mode tail", terms: MAX_DOUBLINGS })
    }

    pub fn eval_log(&self, z: f64) -> Result<LogValue> {
        if !(z >= 1.0 && z.is_finite()) {
            return Err(domain("solve_mode", format!("evaluation point must be >= 1, got {z}")));
        }
        if self.xi.is_zero() {
            return Ok(LogValue::ZERO);
        }
        let (lo, hi) = self.xi.support();
        let n1 = self.n as i32 - 1;
        // ∫_{z1}^{z} with orientation, clipped to the support of ξ
        let oriented = |f: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
            let (a, b, s) = if z >= self.z1 { (self.z1, z, 1.0) } else { (z, self.z1, -1.0) };
            Ok(s * quad(f, a.max(lo), b.min(hi))?)
        };
        if self.mode.k == 0 {
            let v = oriented(&|r: f64| Ok((z - r) * self.xi.eval(self.n, r) * r.powi(n1)))?;
            return Ok(LogValue::from_f64(v));
        }
        let lg = self.pair.log_g(z)?;
        let ld = self.pair.log_d(z)?;
        let (lgz, ldz) = (lg.log_abs(), ld.log_abs());
        let head = oriented(&|r: f64| Ok((self.pair.log_g(r)?.log_abs() - lgz).exp() * self.weight(r)))?;
        let start = z.max(lo);
        let tail = if start < hi {
            let end = self.tail_cutoff(z, ldz)?.min(hi);
            quad(|r: f64| Ok((self.pair.log_d(r)?.log_abs() - ldz).exp() * self.weight(r)), start, end)?
        } else {
            0.0
        };
        let prefactor = lg * ld / LogValue::from_f64(self.pair.w_const);
        Ok(prefactor * LogValue::from_f64(tail).add(LogValue::from_f64(head)))
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        self.eval_log(z)?.try_to_f64("solve_mode")
    }
}

/// `B · Λ^{1/(2n)} · e^{η z^{n/2}}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEnvelope {
    pub scale: f64,
    pub eta: f64,
    pub n: u32,
}

impl GrowthEnvelope {
    pub fn eval(&self, z: f64) -> f64 {
        self.scale * (self.eta * z.powf(0.5 * f64::from(self.n))).exp()
    }
}

/// Envelope of `|u_k|` for `|ξ_k| ≤ B e^{η₀ z^{n/2}}`; for `Λ = 0` the `Λ` factor is 1.
pub fn mode_growth_bound(
    n: u32,
    big_lambda: f64,
    delta_b: f64,
    b_k: f64,
    eta0: f64,
    eta: f64,
) -> Result<GrowthEnvelope> {
    if !(eta0.abs() < 0.5 * delta_b) {
        return Err(domain(
            "mode_growth_bound",
            format!("|eta0| = {} must be below delta_b/2 = {}", eta0.abs(), 0.5 * delta_b),
        ));
    }
    if !(eta > eta0) {
        return Err(domain("mode_growth_bound", format!("eta = {eta} must exceed eta0 = {eta0}")));
    }
    if !(b_k >= 0.0 && big_lambda >= 0.0) {
        return Err(domain("mode_growth_bound", "B_k and Lambda must be >= 0"));
    }
    let lam = if big_lambda > 0.0 { big_lambda.powf(0.5 / f64::from(n)) } else { 1.0 };
    Ok(GrowthEnvelope { scale: b_k * lam, eta, n })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisConfig {
    pub z1: f64,
    pub z_max: f64,
    /// Regularity order; `2n + 1` when unset.
    pub k0: Option<u32>,
    /// `|ξ|_{C^{2K₀}}` used in the Fourier decay bound.
    pub c_norm: f64,
    pub eta0: f64,
    /// Envelope rate; `max(eta0, 0) + δ_b/4` when unset.
    pub eta: Option<f64>,
    pub tolerance: f64,
}

impl SynthesisConfig {
    pub fn new(z1: f64, z_max: f64) -> SynthesisConfig {
        SynthesisConfig { z1, z_max, k0: None, c_norm: 1.0, eta0: 0.0, eta: None, tolerance: 1e-6 }
    }
}

#[derive(Debug, Clone)]
pub struct SynthesisTerm {
    pub spectral: SpectralMode,
    /// Sup-norm weight `max(1, Λ)^{n/2}` of the eigenfunction.
    pub weight: f64,
    pub solution: ModeSolution,
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    terms: Vec<SynthesisTerm>,
    pub tail_bound: f64,
    pub k0: u32,
}

fn sup_weight(n: u32, big_lambda: f64) -> f64 {
    big_lambda.max(1.0).powf(eigenfunction_sup_exponent(n, 0))
}

impl Synthesis {
    pub fn terms(&self) -> &[SynthesisTerm] {
        &self.terms
    }

    fn per_term(&self, z: f64) -> Result<Vec<f64>> {
        self.terms.par_iter().map(|t| Ok(t.weight * t.solution.eval(z)?)).collect()
    }

    /// `Σ w_k u_k(z)`, summed in table order.
    pub fn eval(&self, z: f64) -> Result<f64> {
        Ok(self.per_term(z)?.iter().sum())
    }

    /// `Σ w_k |u_k(z)|`.
    pub fn envelope(&self, z: f64) -> Result<f64> {
        Ok(self.per_term(z)?.iter().map(|v| v.abs()).sum())
    }
}

/// Keeps the first `trunc_n` table entries and bounds the rest by their
/// Fourier decay envelopes at `z_max`.
pub fn synthesize(
    spectrum: &SpectrumTable,
    coefficients: &[ModeCoefficient],
    trunc_n: usize,
    cfg: &SynthesisConfig,
) -> Result<Synthesis> {
    let modes = spectrum.modes();
    if trunc_n > modes.len() {
        return Err(Error::InvalidParams(format!("trunc_N = {trunc_n} exceeds spectrum size {}", modes.len())));
    }
    let n = spectrum.params.n;
    let k0 = cfg.k0.unwrap_or(2 * n + 1);
    let delta_b = spectrum.params.delta_b();
    let eta = cfg.eta.unwrap_or(cfg.eta0.max(0.0) + 0.25 * delta_b);
    let mut tail_bound = 0.0;
    for sm in &modes[trunc_n..] {
        let b = if sm.big_lambda > 0.0 { fourier_decay_bound(sm.big_lambda, k0, cfg.c_norm)? } else { cfg.c_norm };
        let env = mode_growth_bound(n, sm.big_lambda, delta_b, b, cfg.eta0, eta)?;
        tail_bound += sup_weight(n, sm.big_lambda) * env.eval(cfg.z_max);
    }
    if !(tail_bound <= cfg.tolerance) {
        return Err(Error::TailTooLarge { bound: tail_bound, tolerance: cfg.tolerance });
    }
    let mut seen = vec![false; modes.len()];
    let mut terms = Vec::new();
    for c in coefficients {
        let sm = modes
            .get(c.mode_index)
            .ok_or_else(|| Error::InvalidParams(format!("coefficient for mode {} outside the table", c.mode_index)))?;
        if std::mem::replace(&mut seen[c.mode_index], true) {
            return Err(Error::InvalidParams(format!("duplicate coefficient for mode {}", c.mode_index)));
        }
        if c.mode_index >= trunc_n {
            continue;
        }
        let solution = solve_mode(&sm.mode, n, c, cfg.z1, cfg.z_max)?;
        terms.push(SynthesisTerm { spectral: *sm, weight: sup_weight(n, sm.big_lambda), solution });
    }
    terms.sort_by_key(|t| t.spectral.mode.k);
    Ok(Synthesis { terms, tail_bound, k0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    LinearPlusDecaying,
    Constant,
    GapViolation,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::LinearPlusDecaying => "linear_plus_decaying",
            Verdict::Constant => "constant",
            Verdict::GapViolation => "gap_violation",
        }
    }
}

/// `u = κ₀ z + c₀ + h` with `|h| ≲ e^{−δ z^{n/2}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthClass {
    pub kappa0: f64,
    pub c0: f64,
    /// Smallest decay rate among decaying modes; infinite when there are none.
    pub decay_exponent: f64,
    pub residual: f64,
    pub verdict: Verdict,
    /// `(table position, c_k)` for modes with a nonzero `D_k` coefficient.
    pub coefficients: Vec<(usize, f64)>,
}

impl GrowthClass {
    pub fn linear_part(&self, z: f64) -> f64 {
        self.kappa0 * z + self.c0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSamples {
    pub mode: Mode,
    pub z: Vec<f64>,
    pub values: Vec<f64>,
}

/// Slope and intercept of an ordinary least-squares line, plus the rms residual.
fn ols(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::FitDegenerate("abscissae have no spread".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - icept - slope * a).powi(2)).sum();
    Ok((slope, icept, (rss / m).sqrt()))
}

fn upper_half(z: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let start = z.len() / 2;
    (z[start..].to_vec(), v[start..].to_vec())
}

/// Fits `ln|u| ≈ c − δ z^{n/2}` on the upper half of the grid; returns `(δ, rms)`.
pub fn fit_decay_exponent(n: u32, z: &[f64], values: &[f64]) -> Result<(f64, f64)> {
    if z.len() != values.len() || z.len() < 4 {
        return Err(Error::FitDegenerate("decay fits need >= 4 samples".into()));
    }
    let (zs, vs) = upper_half(z, values);
    if vs.iter().any(|&v| v == 0.0 || !v.is_finite()) {
        return Err(Error::FitDegenerate("zero or non-finite samples in the fit window".into()));
    }
    let half = 0.5 * f64::from(n);
    let s: Vec<f64> = zs.iter().map(|z| z.powf(half)).collect();
    let l: Vec<f64> = vs.iter().map(|v| v.abs().ln()).collect();
    let (slope, _, rms) = ols(&s, &l)?;
    Ok((-slope, rms))
}

/// Splits harmonic mode data into the linear mode-0 part and decaying modes,
/// flagging any mode whose ratio to `G_k` fails to decay at rate `δ_b`.
pub fn decompose_harmonic(samples: &[ModeSamples], params: &crate::spectral::CalabiParams) -> Result<GrowthClass> {
    params.validate()?;
    let n = params.n;
    let zero = samples
        .iter()
        .find(|s| s.mode.k == 0)
        .ok_or_else(|| Error::FitDegenerate("mode-0 samples are required".into()))?;
    if zero.z.len() != zero.values.len() || zero.z.len() < 2 {
        return Err(Error::FitDegenerate("mode-0 samples need >= 2 points".into()));
    }
    let (zmin, zmax) = zero.z.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &z| (a.min(z), b.max(z)));
    if !(zmin > 0.0 && zmax >= 10.0 * zmin) {
        return Err(Error::FitDegenerate(format!("mode-0 grid [{zmin}, {zmax}] covers less than a decade")));
    }
    let (kappa0, c0, rms0) = ols(&zero.z, &zero.values)?;
    let scale = zero.values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let mut residual = rms0 / scale;
    let mut decay = f64::INFINITY;
    let mut violation = false;
    let delta_b = params.delta_b();
    for s in samples.iter().filter(|s| s.mode.k != 0) {
        s.mode.validate(n, Some(params.lambda_d))?;
        if s.z.len() != s.values.len() || s.z.len() < 4 {
            return Err(Error::FitDegenerate(format!("mode {} needs >= 4 samples", s.mode.k)));
        }
        if s.values.iter().all(|&v| v == 0.0) {
            continue;
        }
        let (rate, rms) = fit_decay_exponent(n, &s.z, &s.values)?;
        decay = decay.min(rate);
        residual = residual.max(rms);
        // u_k / G_k must decay; a G_k component leaves the ratio flat
        let pair = fundamental_pair(&s.mode, n)?;
        let (zs, vs) = upper_half(&s.z, &s.values);
        let x: Vec<f64> = zs.iter().map(|z| z.powf(0.5 * f64::from(n))).collect();
        let y = zs
            .iter()
            .zip(&vs)
            .map(|(&z, &v)| Ok(v.abs().ln() - pair.log_g(z)?.log_abs()))
            .collect::<Result<Vec<f64>>>()?;
        let (slope, _, _) = ols(&x, &y)?;
        if !(slope < -delta_b) {
            violation = true;
        }
    }
    let verdict = if violation {
        Verdict::GapViolation
    } else if kappa0.abs() * zmax <= 1e-9 * scale {
        Verdict::Constant
    } else {
        Verdict::LinearPlusDecaying
    };
    Ok(GrowthClass { kappa0, c0, decay_exponent: decay, residual, verdict, coefficients: Vec::new() })
}

fn check_growth(op: &'static str, growth_exponent: f64, delta_b: f64) -> Result<()> {
    if !(growth_exponent < delta_b) {
        return Err(domain(op, format!("growth exponent {growth_exponent} is not below delta_b = {delta_b}")));
    }
    Ok(())
}

/// Decay rate of `D_k` in `z^{n/2}`; modes with `j ≥ 1` decay faster than any such rate.
fn d_rate(mode: &Mode, n: u32) -> f64 {
    if mode.j == 0 {
        2.0 * (mode.lambda / f64::from(n)).sqrt()
    } else {
        f64::INFINITY
    }
}

fn per_mode_data<'a>(
    spectrum: &'a SpectrumTable,
    data: &[f64],
    what: &str,
) -> Result<Vec<(usize, &'a SpectralMode, f64)>> {
    let rest = spectrum.len() - 1;
    if data.len() > rest {
        return Err(Error::InvalidParams(format!("{} {what} given for {rest} nonzero modes", data.len())));
    }
    Ok(spectrum
        .modes()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, sm)| (i, sm, data.get(i - 1).copied().unwrap_or(0.0)))
        .collect())
}

/// Neumann data at `z₀`: slope `κ₀` for mode 0 and one flux per `k ≥ 1` mode
/// (table order, zero-padded).
pub fn classify_neumann(
    spectrum: &SpectrumTable,
    kappa0: f64,
    mode_fluxes: &[f64],
    growth_exponent: f64,
    expect_constant: bool,
) -> Result<GrowthClass> {
    let p = spectrum.params;
    check_growth("classify_neumann", growth_exponent, p.delta_b())?;
    let mut coefficients = Vec::new();
    let mut decay = f64::INFINITY;
    for (i, sm, flux) in per_mode_data(spectrum, mode_fluxes, "fluxes")? {
        let dp = fundamental_pair(&sm.mode, p.n)?.log_d_prime(p.z0)?;
        if dp.sign() >= 0 {
            return Err(Error::Inconsistent(format!("D'(z0) is not negative for mode {i}")));
        }
        if flux != 0.0 {
            if expect_constant {
                return Err(Error::Inconsistent(format!("nonzero flux {flux} on mode {i} in a constant problem")));
            }
            coefficients.push((i, (LogValue::from_f64(flux) / dp).to_f64()));
            decay = decay.min(d_rate(&sm.mode, p.n));
        }
    }
    let verdict =
        if kappa0 == 0.0 && coefficients.is_empty() { Verdict::Constant } else { Verdict::LinearPlusDecaying };
    Ok(GrowthClass { kappa0, c0: 0.0, decay_exponent: decay, residual: 0.0, verdict, coefficients })
}

/// Dirichlet data at `z₀`: `boundary_values[0]` is mode 0 (must vanish),
/// the rest follow the table; `normalization` fixes the slope `κ₀`.
pub fn classify_dirichlet(
    spectrum: &SpectrumTable,
    boundary_values: &[f64],
    normalization: Option<f64>,
    growth_exponent: f64,
) -> Result<GrowthClass> {
    let p = spectrum.params;
    check_growth("classify_dirichlet", growth_exponent, p.delta_b())?;
    if boundary_values.first().is_some_and(|&v| v != 0.0) {
        return Err(domain("classify_dirichlet", "mode-0 boundary value must be 0"));
    }
    let kappa0 = normalization.ok_or(Error::NormalizationMissing)?;
    let rest = boundary_values.get(1..).unwrap_or(&[]);
    let mut coefficients = Vec::new();
    let mut decay = f64::INFINITY;
    for (i, sm, value) in per_mode_data(spectrum, rest, "boundary values")? {
        if value != 0.0 {
            let d = fundamental_pair(&sm.mode, p.n)?.log_d(p.z0)?;
            coefficients.push((i, (LogValue::from_f64(value) / d).to_f64()));
            decay = decay.min(d_rate(&sm.mode, p.n));
        }
    }
    let verdict = if !coefficients.is_empty() {
        Verdict::GapViolation
    } else if kappa0 == 0.0 {
        Verdict::Constant
    } else {
        Verdict::LinearPlusDecaying
    };
    Ok(GrowthClass { kappa0, c0: -kappa0 * p.z0, decay_exponent: decay, residual: 0.0, verdict, coefficients })
}
