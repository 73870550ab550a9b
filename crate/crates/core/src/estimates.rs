//! Grid certification of the uniform two-sided estimates for `K_ν`, `I_ν`,
//! `T̃`, `M`, their product, and the monotonicity of `F̂`, `Ĝ`.
//!
//! Every ratio is formed as a difference of logs, so no certificate depends on
//! a linear-domain value that could overflow.

use rayon::prelude::*;

use crate::calabi_ode::{fhat_ghat, laplace_profile, HypergeomParams, Mode};
use crate::error::{domain, Result};
use crate::specfun::{bessel_i_log, bessel_k_log, kummer_m_log, ln_gamma, tri_t};

/// Relative slack allowed on constants the estimates pin exactly.
pub const PINNED_SLACK: f64 = 1e-12;
/// Largest tolerated increment in the wrong direction for monotone checks.
pub const MONOTONE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertificateKind {
    /// Existential constants: passes when the ratio range is finite and positive.
    TwoSided,
    /// As `TwoSided`, and the upper constant may not exceed `max_upper`.
    Pinned { max_upper: f64 },
    /// Constants are the smallest and largest signed increments; passes when
    /// the largest is below `tol`.
    Monotone { tol: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCertificate {
    pub name: String,
    pub grid_spec: String,
    pub observed_lower_const: f64,
    pub observed_upper_const: f64,
    pub claimed_form: String,
    pub kind: CertificateKind,
    pub pass: bool,
}

impl BoundCertificate {
    /// Builds a ratio certificate from `ln(value) − ln(envelope)` samples.
    fn from_log_ratios(name: &str, grid_spec: &str, claimed: &str, kind: CertificateKind, logs: &[f64]) -> Self {
        let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let finite = logs.iter().all(|l| l.is_finite());
        let (lower, upper) = if logs.is_empty() { (f64::NAN, f64::NAN) } else { (lo.exp(), hi.exp()) };
        let mut pass = finite && !logs.is_empty() && lower > 0.0 && lower <= upper && upper < f64::INFINITY;
        if let CertificateKind::Pinned { max_upper } = kind {
            pass &= upper <= max_upper * (1.0 + PINNED_SLACK);
        }
        BoundCertificate {
            name: name.to_string(),
            grid_spec: grid_spec.to_string(),
            observed_lower_const: lower,
            observed_upper_const: upper,
            claimed_form: claimed.to_string(),
            kind,
            pass,
        }
    }

    fn monotone(name: &str, grid_spec: &str, claimed: &str, increments: &[f64]) -> Self {
        let tol = MONOTONE_TOL;
        let (lower, upper) = if increments.is_empty() {
            (0.0, 0.0)
        } else {
            (
                increments.iter().copied().fold(f64::INFINITY, f64::min),
                increments.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            )
        };
        let pass = increments.iter().all(|d| d.is_finite()) && upper < tol;
        BoundCertificate {
            name: name.to_string(),
            grid_spec: grid_spec.to_string(),
            observed_lower_const: lower,
            observed_upper_const: upper,
            claimed_form: claimed.to_string(),
            kind: CertificateKind::Monotone { tol },
            pass,
        }
    }

    /// `name|grid_spec|lower|upper|pass`.
    pub fn record(&self) -> String {
        format!(
            "{}|{}|{:.16e}|{:.16e}|{}",
            self.name, self.grid_spec, self.observed_lower_const, self.observed_upper_const, self.pass
        )
    }
}

pub fn log_grid(a: f64, b: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![a];
    }
    (0..points).map(|i| a * (b / a).powf(i as f64 / (points - 1) as f64)).collect()
}

pub const DEFAULT_Q: [f64; 6] = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0];
pub const DEFAULT_NU: [f64; 4] = [1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 5.0];
pub const DEFAULT_POINTS: usize = 64;

/// `y ∈ [1, 100]`, 64 log-spaced points.
pub fn default_bessel_grid() -> Vec<f64> {
    log_grid(1.0, 100.0, DEFAULT_POINTS)
}

/// `y ∈ −[1, 100]`, 64 log-spaced points.
pub fn default_negative_grid() -> Vec<f64> {
    log_grid(1.0, 100.0, DEFAULT_POINTS).into_iter().map(|y| -y).collect()
}

/// Case B sample values `Q ∈ {−1/n, 0, 1/2, 1}`.
pub fn default_case_b_q(n: u32) -> Vec<f64> {
    vec![-1.0 / f64::from(n), 0.0, 0.5, 1.0]
}

/// `z ∈ [z_min, 10 z_min]` with `z_min = max(1, η^{2/n})`, 64 log-spaced points.
pub fn default_z_grid(n: u32, eta: f64) -> Vec<f64> {
    let z_min = 1f64.max(eta.powf(2.0 / f64::from(n)));
    log_grid(z_min, 10.0 * z_min, DEFAULT_POINTS)
}

fn describe(var: &str, grid: &[f64]) -> String {
    match (grid.first(), grid.last()) {
        (Some(a), Some(b)) => format!("{var}=[{a},{b}]x{}", grid.len()),
        _ => format!("{var}=[]"),
    }
}

fn params_spec(p: &HypergeomParams) -> String {
    format!("alpha={};beta={};Q={}", p.alpha, p.beta, p.q)
}

fn eval_grid<F>(grid: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    grid.par_iter().map(|&y| f(y)).collect()
}

fn check_negative_grid(op: &'static str, grid: &[f64]) -> Result<()> {
    if let Some(y) = grid.iter().find(|&&y| !(y <= -1.0)) {
        return Err(domain(op, format!("grid point {y} is not <= -1")));
    }
    Ok(())
}

/// `K_ν √y e^y` and `I_ν √y e^{−y}` on `y ≥ 1`.
pub fn certify_bessel(nu: f64, y_grid: &[f64]) -> Result<Vec<BoundCertificate>> {
    if let Some(y) = y_grid.iter().find(|&&y| !(y >= 1.0)) {
        return Err(domain("certify_bessel", format!("grid point {y} is below 1")));
    }
    if !(nu > -1.0) {
        return Err(domain("certify_bessel", "the two-sided I bound needs nu > -1"));
    }
    let spec = format!("nu={nu};{}", describe("y", y_grid));
    let k = eval_grid(y_grid, |y| Ok(bessel_k_log(nu, y)?.log_abs() + y + 0.5 * y.ln()))?;
    let i = eval_grid(y_grid, |y| {
        let v = bessel_i_log(nu, y)?;
        Ok(if v.sign() > 0 { v.log_abs() - y + 0.5 * y.ln() } else { f64::NAN })
    })?;
    Ok(vec![
        BoundCertificate::from_log_ratios(
            "bessel_K",
            &spec,
            "K_nu(y) ~ e^-y/sqrt(y), y>=1",
            CertificateKind::TwoSided,
            &k,
        ),
        BoundCertificate::from_log_ratios(
            "bessel_I",
            &spec,
            "I_nu(y) ~ e^y/sqrt(y), y>=1",
            CertificateKind::TwoSided,
            &i,
        ),
    ])
}

/// `I_ν(y)/y^ν` on `0 < y ≤ 1`.
pub fn certify_bessel_small(nu: f64, y_grid: &[f64]) -> Result<BoundCertificate> {
    if let Some(y) = y_grid.iter().find(|&&y| !(y > 0.0 && y <= 1.0)) {
        return Err(domain("certify_bessel_small", format!("grid point {y} is outside (0, 1]")));
    }
    if !(nu > -1.0) {
        return Err(domain("certify_bessel_small", "the two-sided I bound needs nu > -1"));
    }
    let spec = format!("nu={nu};{}", describe("y", y_grid));
    let r = eval_grid(y_grid, |y| {
        let v = bessel_i_log(nu, y)?;
        Ok(if v.sign() > 0 { v.log_abs() - nu * y.ln() } else { f64::NAN })
    })?;
    Ok(BoundCertificate::from_log_ratios(
        "bessel_I_small",
        &spec,
        "I_nu(y) ~ y^nu, 0<y<=1",
        CertificateKind::TwoSided,
        &r,
    ))
}

fn inv_n(p: &HypergeomParams) -> f64 {
    p.gamma_n - 0.5
}

/// Laplace-method envelopes for `T̃` and `M` when `Q ≥ 1`.
pub fn certify_tri_ku_case_a(params: &HypergeomParams, y_grid: &[f64]) -> Result<Vec<BoundCertificate>> {
    if !(params.q >= 1.0) {
        return Err(domain("certify_tri_ku_caseA", format!("needs Q >= 1, got {}", params.q)));
    }
    check_negative_grid("certify_tri_ku_caseA", y_grid)?;
    let p = *params;
    let lg = ln_gamma(p.q + 1.0)?;
    let lq = p.q.ln();
    let rows = y_grid
        .par_iter()
        .map(|&y| -> Result<[f64; 4]> {
            let prof = laplace_profile(&p, y)?;
            let t = tri_t(p.beta, p.alpha, y)?.log_abs();
            let m = kummer_m_log(p.beta, p.alpha, y)?.log_abs();
            let ly = (-y).ln();
            let t_env = y + prof.f_t0 - lg;
            let m_env = (1.0 - 2.0 * p.alpha) / 4.0 * ly + y + prof.g_u0 - lg;
            Ok([
                t - (0.25 * lq + t_env),
                t - ((-0.25 - 0.5 * inv_n(&p)) * lq - ly + t_env),
                m - m_env,
                m - (-0.25 * lq + m_env),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = format!("{};{}", params_spec(params), describe("y", y_grid));
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    let two = CertificateKind::TwoSided;
    Ok(vec![
        BoundCertificate::from_log_ratios(
            "caseA_T_upper",
            &spec,
            "T <= C Q^(1/4) e^(y+F(t0))/Gamma(Q+1)",
            two,
            &col(0),
        ),
        BoundCertificate::from_log_ratios(
            "caseA_T_lower",
            &spec,
            "T >= C^-1 Q^(-1/4-1/(2n)) (-y)^-1 e^(y+F(t0))/Gamma(Q+1)",
            two,
            &col(1),
        ),
        BoundCertificate::from_log_ratios(
            "caseA_M_upper",
            &spec,
            "M <= C (-y)^((1-2alpha)/4) e^(y+G(u0))/Gamma(Q+1)",
            two,
            &col(2),
        ),
        BoundCertificate::from_log_ratios(
            "caseA_M_lower",
            &spec,
            "M >= C^-1 Q^(-1/4) (-y)^((1-2alpha)/4) e^(y+G(u0))/Gamma(Q+1)",
            two,
            &col(3),
        ),
    ])
}

/// Bounded-`Q` envelopes; the `T̃` upper constant is pinned at 1.
pub fn certify_case_b(params: &HypergeomParams, y_grid: &[f64]) -> Result<Vec<BoundCertificate>> {
    if !(params.q <= 1.0) {
        return Err(domain("certify_caseB", format!("needs Q <= 1, got {}", params.q)));
    }
    check_negative_grid("certify_caseB", y_grid)?;
    let p = *params;
    let rows = y_grid
        .par_iter()
        .map(|&y| -> Result<[f64; 2]> {
            let ly = (-y).ln();
            let t = tri_t(p.beta, p.alpha, y)?.log_abs();
            let m = kummer_m_log(p.beta, p.alpha, y)?.log_abs();
            Ok([t - (y + (p.beta - p.alpha) * ly), m + p.beta * ly])
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = format!("{};{}", params_spec(params), describe("y", y_grid));
    let t: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let m: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    Ok(vec![
        BoundCertificate::from_log_ratios(
            "caseB_T",
            &spec,
            "C^-1 e^y (-y)^(beta-alpha) <= T <= e^y (-y)^(beta-alpha)",
            CertificateKind::Pinned { max_upper: 1.0 },
            &t,
        ),
        BoundCertificate::from_log_ratios("caseB_M", &spec, "M ~ (-y)^(-beta)", CertificateKind::TwoSided, &m),
    ])
}

/// Product estimate for `Q ≥ 1`, plus the pointwise `u₀t₀` inequality.
pub fn certify_product(params: &HypergeomParams, y_grid: &[f64]) -> Result<Vec<BoundCertificate>> {
    if !(params.q >= 1.0) {
        return Err(domain("certify_product", format!("needs Q >= 1, got {}", params.q)));
    }
    check_negative_grid("certify_product", y_grid)?;
    let p = *params;
    let lq = p.q.ln();
    let gamma_part = ln_gamma(p.alpha)? - 2.0 * ln_gamma(p.alpha - p.beta)?;
    let rows = y_grid
        .par_iter()
        .map(|&y| -> Result<[f64; 3]> {
            let ly = (-y).ln();
            let prof = laplace_profile(&p, y)?;
            let t = tri_t(p.beta, p.alpha, y)?.log_abs();
            let m = kummer_m_log(p.beta, p.alpha, y)?.log_abs();
            let exp_env = 0.5 * p.gamma_n * ly - y - p.q + (p.q + 0.5 * p.gamma_n) * lq;
            let tm_env = gamma_part + inv_n(&p) * ly + p.q * lq - p.q + y;
            let ut_env = -0.5 * ly + (p.q + 0.5 * p.gamma_n).ln();
            Ok([prof.f_t0 + prof.g_u0 - exp_env, t + m - tm_env, (prof.u0 * prof.t0).ln() - ut_env])
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = format!("{};{}", params_spec(params), describe("y", y_grid));
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    Ok(vec![
        BoundCertificate::from_log_ratios(
            "product_exponent",
            &spec,
            "e^(F(t0)+G(u0)) <= C (-y)^(gamma/2) e^-y e^-Q Q^(Q+gamma/2)",
            CertificateKind::TwoSided,
            &col(0),
        ),
        BoundCertificate::from_log_ratios(
            "product_TM",
            &spec,
            "T M <= C Gamma(alpha)/Gamma(alpha-beta)^2 (-y)^(1/n) Q^Q e^-Q e^y",
            CertificateKind::TwoSided,
            &col(1),
        ),
        BoundCertificate::from_log_ratios(
            "product_u0t0",
            &spec,
            "u0 t0 <= (-y)^(-1/2) (Q+gamma/2)",
            CertificateKind::Pinned { max_upper: 1.0 },
            &col(2),
        ),
    ])
}

/// `F̂ + η z^{n/2}` non-increasing and `Ĝ − η z^{n/2}` non-decreasing on `z_grid`.
pub fn check_monotonicity(mode: &Mode, n: u32, eta: f64, z_grid: &[f64]) -> Result<Vec<BoundCertificate>> {
    if !(eta >= 0.0) {
        return Err(domain("check_monotonicity", format!("eta must be >= 0, got {eta}")));
    }
    let z_min = 1f64.max(eta.powf(2.0 / f64::from(n)));
    if let Some(z) = z_grid.iter().find(|&&z| !(z >= z_min)) {
        return Err(domain("check_monotonicity", format!("grid point {z} below max(1, eta^(2/n)) = {z_min}")));
    }
    if z_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(domain("check_monotonicity", "grid must be strictly increasing"));
    }
    let half = f64::from(n) / 2.0;
    let vals = z_grid
        .par_iter()
        .map(|&z| -> Result<(f64, f64)> {
            let (f, g) = fhat_ghat(mode, n, z)?;
            let w = eta * z.powf(half);
            Ok((f + w, g - w))
        })
        .collect::<Result<Vec<_>>>()?;
    let df: Vec<f64> = vals.windows(2).map(|w| w[1].0 - w[0].0).collect();
    let dg: Vec<f64> = vals.windows(2).map(|w| w[0].1 - w[1].1).collect();
    let spec = format!("k={};j={};lambda={};n={n};eta={eta};{}", mode.k, mode.j, mode.lambda, describe("z", z_grid));
    Ok(vec![
        BoundCertificate::monotone("monotone_Fhat", &spec, "Fhat(z) + eta z^(n/2) decreasing", &df),
        BoundCertificate::monotone("monotone_Ghat", &spec, "Ghat(z) - eta z^(n/2) increasing", &dg),
    ])
}
