//! Per-mode ODE `u'' − (j²n²/4 · z^n + nλ) z^{n−2} u = z^{n−1} ξ(z)`:
//! fundamental solutions, Wronskians, residual checks and the Laplace-method
//! profile functions used by the uniform estimates.

use crate::error::{domain, Error, Result};
use crate::logvalue::LogValue;
use crate::specfun::{bessel_i_log, bessel_k_log, kummer_m_log, log_gamma, log_rgamma, tricomi_u_log};

/// One term of the cross-section eigen-expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: usize,
    pub j: u32,
    pub lambda: f64,
}

impl Mode {
    /// Checks the structural invariants that do not depend on `n` or `λ_D`.
    pub fn new(k: usize, j: u32, lambda: f64) -> Result<Mode> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidMode(format!("lambda must be finite and >= 0, got {lambda}")));
        }
        if k == 0 && (j != 0 || lambda != 0.0) {
            return Err(Error::InvalidMode("mode 0 must have j = 0 and lambda = 0".into()));
        }
        if k > 0 && j == 0 && lambda == 0.0 {
            return Err(Error::InvalidMode(format!("mode {k}: zero-weight modes need lambda > 0")));
        }
        Ok(Mode { k, j, lambda })
    }

    pub fn zero() -> Mode {
        Mode { k: 0, j: 0, lambda: 0.0 }
    }

    /// Full check: `λ ≥ (n−1)j/2`, and `λ ≥ λ_D` for zero-weight modes when `λ_D` is known.
    pub fn validate(&self, n: u32, lambda_d: Option<f64>) -> Result<()> {
        Mode::new(self.k, self.j, self.lambda)?;
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
        }
        let bound = f64::from(n - 1) * f64::from(self.j) / 2.0;
        if self.lambda < bound {
            return Err(Error::InvalidMode(format!(
                "mode {}: lambda = {} below (n-1)j/2 = {bound}",
                self.k, self.lambda
            )));
        }
        if let Some(ld) = lambda_d {
            if self.k > 0 && self.j == 0 && self.lambda < ld {
                return Err(Error::InvalidMode(format!(
                    "mode {}: zero-weight lambda = {} below lambda_D = {ld}",
                    self.k, self.lambda
                )));
            }
        }
        Ok(())
    }

    /// ODE coefficient `(j²n²/4 · z^n + nλ) z^{n−2}`.
    pub fn potential(&self, n: u32, z: f64) -> f64 {
        let nf = f64::from(n);
        let jf = f64::from(self.j);
        (jf * jf * nf * nf / 4.0 * zeta_map(z, n) + nf * self.lambda) * z.powi(n as i32 - 2)
    }
}

/// `(α, β, Q, γ_n)` of the confluent hypergeometric reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams {
    pub alpha: f64,
    pub beta: f64,
    pub q: f64,
    pub gamma_n: f64,
}

impl HypergeomParams {
    /// Parameters with a prescribed `Q`; `β = α − Q − 1`.
    pub fn from_q(n: u32, q: f64) -> Result<HypergeomParams> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
        }
        let nf = f64::from(n);
        if !(q >= -1.0 / nf) {
            return Err(domain("hyper_params", format!("Q = {q} below -1/n")));
        }
        let alpha = 1.0 - 1.0 / nf;
        Ok(HypergeomParams { alpha, beta: alpha - q - 1.0, q, gamma_n: 0.5 + 1.0 / nf })
    }
}

pub fn hyper_params(mode: &Mode, n: u32) -> Result<HypergeomParams> {
    if mode.j == 0 {
        return Err(domain("hyper_params", "zero-weight modes use the Bessel branch"));
    }
    mode.validate(n, None)?;
    let nf = f64::from(n);
    let alpha = 1.0 - 1.0 / nf;
    // λ at the bound gives β = 0 exactly; clamp the rounding residue there
    let beta = (0.5 * alpha - mode.lambda / (f64::from(mode.j) * nf)).min(0.0);
    Ok(HypergeomParams { alpha, beta, q: alpha - beta - 1.0, gamma_n: 0.5 + 1.0 / nf })
}

/// `ζ = z^n`.
pub fn zeta_map(z: f64, n: u32) -> f64 {
    z.powi(n as i32)
}

pub fn zeta_inverse(zeta: f64, n: u32) -> f64 {
    zeta.powf(1.0 / f64::from(n))
}

/// Which closed form a pair uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// Mode 0: `G = 1`, `D = z`.
    Linear,
    /// `G = z^{1/2} I_ν(c z^{n/2})`, `D = z^{1/2} K_ν(c z^{n/2})`, `ν = 1/n`, `c = 2√(λ/n)`.
    Bessel { nu: f64, c: f64 },
    /// `G = e^{x/2} M(β, α, −x)`, `D = e^{x/2} T̃(β, α, −x)`, `x = j z^n`.
    Hypergeometric { params: HypergeomParams, j: f64 },
}

/// Growing/decaying solutions of the homogeneous mode equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalPair {
    pub mode: Mode,
    pub n: u32,
    /// `W(G, D) = G D' − G' D`.
    pub w_const: f64,
    branch: Branch,
}

/// Exponent magnitude beyond which the plain-`f64` evaluators refuse to run.
pub const LINEAR_LIMIT: f64 = 600.0;

pub fn fundamental_pair(mode: &Mode, n: u32) -> Result<FundamentalPair> {
    mode.validate(n, None)?;
    let nf = f64::from(n);
    if mode.k == 0 {
        return Ok(FundamentalPair { mode: *mode, n, w_const: 1.0, branch: Branch::Linear });
    }
    if mode.j == 0 {
        let c = 2.0 * (mode.lambda / nf).sqrt();
        return Ok(FundamentalPair { mode: *mode, n, w_const: -nf / 2.0, branch: Branch::Bessel { nu: 1.0 / nf, c } });
    }
    let params = hyper_params(mode, n)?;
    let j = f64::from(mode.j);
    // Γ(α−1)/Γ(α−β) · j^{1/n}
    let w = log_gamma(params.alpha - 1.0)? * log_rgamma(params.alpha - params.beta) * LogValue::exp(j.ln() / nf);
    Ok(FundamentalPair { mode: *mode, n, w_const: w.to_f64(), branch: Branch::Hypergeometric { params, j } })
}

impl FundamentalPair {
    pub fn branch(&self) -> &Branch {
        &self.branch
    }

    fn check_z(z: f64) -> Result<()> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(domain("fundamental_pair", format!("z must be positive, got {z}")));
        }
        Ok(())
    }

    pub fn log_g(&self, z: f64) -> Result<LogValue> {
        Self::check_z(z)?;
        match self.branch {
            Branch::Linear => Ok(LogValue::ONE),
            Branch::Bessel { nu, c } => {
                let s = c * z.powf(0.5 * f64::from(self.n));
                Ok(LogValue::exp(0.5 * z.ln()) * bessel_i_log(nu, s)?)
            }
            Branch::Hypergeometric { params, j } => {
                let x = j * zeta_map(z, self.n);
                Ok(LogValue::exp(0.5 * x) * kummer_m_log(params.beta, params.alpha, -x)?)
            }
        }
    }

    pub fn log_d(&self, z: f64) -> Result<LogValue> {
        Self::check_z(z)?;
        match self.branch {
            Branch::Linear => Ok(LogValue::from_f64(z)),
            Branch::Bessel { nu, c } => {
                let s = c * z.powf(0.5 * f64::from(self.n));
                Ok(LogValue::exp(0.5 * z.ln()) * bessel_k_log(nu, s)?)
            }
            Branch::Hypergeometric { params, j } => {
                // e^{x/2} T̃(β, α, −x) = e^{−x/2} U(Q+1, α, x)
                let x = j * zeta_map(z, self.n);
                Ok(LogValue::exp(-0.5 * x) * tricomi_u_log(params.q + 1.0, params.alpha, x)?)
            }
        }
    }

    /// `D'(z)` from the closed-form derivative of the branch.
    pub fn log_d_prime(&self, z: f64) -> Result<LogValue> {
        Self::check_z(z)?;
        let nf = f64::from(self.n);
        match self.branch {
            Branch::Linear => Ok(LogValue::ONE),
            Branch::Bessel { nu, c } => {
                // d/dz [z^{1/2} K_ν(s)], K_ν' = −(K_{ν−1} + K_{ν+1})/2, ds/dz = c n/2 z^{n/2−1}
                let s = c * z.powf(0.5 * nf);
                let k = bessel_k_log(nu, s)?;
                let kp = bessel_k_log(nu - 1.0, s)?.add(bessel_k_log(nu + 1.0, s)?);
                let first = LogValue::exp(-0.5 * z.ln() - 2f64.ln()) * k;
                let second = LogValue::exp(0.5 * z.ln() + (c * nf / 4.0).ln() + (0.5 * nf - 1.0) * z.ln()) * kp;
                Ok(first.sub(second))
            }
            Branch::Hypergeometric { params, j } => {
                // d/dx [e^{−x/2} U(a, α, x)] = −e^{−x/2} (U(a, α, x)/2 + a U(a+1, α+1, x))
                let a = params.q + 1.0;
                let x = j * zeta_map(z, self.n);
                let u = tricomi_u_log(a, params.alpha, x)?;
                let u1 = tricomi_u_log(a + 1.0, params.alpha + 1.0, x)?;
                let inner = (u * LogValue::exp(-(2f64.ln()))).add(u1 * LogValue::from_f64(a));
                let dxdz = LogValue::exp((j * nf).ln() + (nf - 1.0) * z.ln());
                Ok(-(LogValue::exp(-0.5 * x) * inner * dxdz))
            }
        }
    }

    /// Largest exponent magnitude appearing in `G`, `D` at `z`.
    fn exponent_scale(&self, z: f64) -> f64 {
        match self.branch {
            Branch::Linear => 0.0,
            Branch::Bessel { c, .. } => c * z.powf(0.5 * f64::from(self.n)),
            Branch::Hypergeometric { j, .. } => 0.5 * j * zeta_map(z, self.n),
        }
    }

    fn check_linear(&self, z: f64) -> Result<()> {
        if self.exponent_scale(z) > LINEAR_LIMIT {
            return Err(domain(
                "fundamental_pair",
                format!("z = {z} is outside the linear-domain range; use the log evaluators"),
            ));
        }
        Ok(())
    }

    pub fn g(&self, z: f64) -> Result<f64> {
        self.check_linear(z)?;
        Ok(self.log_g(z)?.to_f64())
    }

    pub fn d(&self, z: f64) -> Result<f64> {
        self.check_linear(z)?;
        Ok(self.log_d(z)?.to_f64())
    }
}

/// Finite-difference step used for first derivatives.
pub fn fd_step(z: f64) -> f64 {
    1e-5f64.max(1e-5 * z)
}

fn log_derivative(f: &dyn Fn(f64) -> Result<LogValue>, z: f64) -> Result<f64> {
    let h = fd_step(z);
    let v = |x: f64| -> Result<f64> { Ok(f(x)?.log_abs()) };
    Ok((-v(z + 2.0 * h)? + 8.0 * v(z + h)? - 8.0 * v(z - h)? + v(z - 2.0 * h)?) / (12.0 * h))
}

/// `G D' − G' D` by 4th-order central differences of `ln G`, `ln D`.
pub fn numeric_wronskian(pair: &FundamentalPair, z: f64) -> Result<f64> {
    let dg = log_derivative(&|x| pair.log_g(x), z)?;
    let dd = log_derivative(&|x| pair.log_d(x), z)?;
    let gd = pair.log_g(z)? * pair.log_d(z)?;
    Ok((gd * LogValue::from_f64(dd - dg)).to_f64())
}

/// Step for second differences: a power of two near `1e−3·min(z, 1/√q)`.
fn second_difference_step(q: f64, z: f64) -> f64 {
    let scale = if q > 0.0 { z.min(1.0 / q.sqrt()) } else { z };
    2f64.powi((1e-3 * scale).log2().floor() as i32)
}

/// Scaled residual `|u'' − q u − z^{n−1} ξ| / max(|u''|, |q u|, |z^{n−1} ξ|)`.
pub fn ode_residual(
    u: &dyn Fn(f64) -> Result<f64>,
    mode: &Mode,
    n: u32,
    z: f64,
    rhs: Option<&dyn Fn(f64) -> f64>,
) -> Result<f64> {
    if !(z >= 1.0) {
        return Err(domain("ode_residual", format!("z must be >= 1, got {z}")));
    }
    let q = mode.potential(n, z);
    let h = second_difference_step(q, z);
    if !(h > 1e-9 * z) {
        return Err(Error::Step { op: "ode_residual", z });
    }
    let u0 = u(z)?;
    let outer = u(z + 2.0 * h)? + u(z - 2.0 * h)?;
    let inner = u(z + h)? + u(z - h)?;
    let upp = (16.0 * inner - outer - 30.0 * u0) / (12.0 * h * h);
    let forcing = rhs.map_or(0.0, |f| z.powi(n as i32 - 1) * f(z));
    let qu = q * u0;
    let scale = upp.abs().max(qu.abs()).max(forcing.abs());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((upp - qu - forcing).abs() / scale)
}

/// Values at the Laplace-method critical points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceProfile {
    pub t0: f64,
    pub u0: f64,
    pub f_t0: f64,
    pub g_u0: f64,
}

/// `F(t) = y t + Q log(t/(t+1))`.
pub fn profile_f(params: &HypergeomParams, y: f64, t: f64) -> f64 {
    y * t - params.q * (1.0 / t).ln_1p()
}

/// `G(u) = −u² + 2√(−y) u + (2Q + γ_n) log u`.
pub fn profile_g(params: &HypergeomParams, y: f64, u: f64) -> f64 {
    -u * u + 2.0 * (-y).sqrt() * u + (2.0 * params.q + params.gamma_n) * u.ln()
}

/// Root of `t² + t + Q/y = 0`; needs `Q > 0`.
pub fn critical_t0(params: &HypergeomParams, y: f64) -> Result<f64> {
    if !(params.q > 0.0) {
        return Err(domain("laplace_profile", format!("t0 needs Q > 0, got {}", params.q)));
    }
    let r = 4.0 * params.q / (-y);
    // (−1 + √(1+r))/2 without cancellation
    Ok(0.5 * r / (1.0 + (1.0 + r).sqrt()))
}

/// Positive root of `G'(u) = 0`; needs `2Q + γ_n ≥ 0`.
pub fn critical_u0(params: &HypergeomParams, y: f64) -> Result<f64> {
    if !(2.0 * params.q + params.gamma_n >= 0.0) {
        return Err(domain("laplace_profile", "u0 needs 2Q + gamma_n >= 0"));
    }
    let m = -y;
    Ok(0.5 * m.sqrt() * (1.0 + (1.0 + (4.0 * params.q + 2.0 * params.gamma_n) / m).sqrt()))
}

pub fn laplace_profile(params: &HypergeomParams, y: f64) -> Result<LaplaceProfile> {
    if !(y <= -1.0) {
        return Err(domain("laplace_profile", format!("y must be <= -1, got {y}")));
    }
    let t0 = critical_t0(params, y)?;
    let u0 = critical_u0(params, y)?;
    Ok(LaplaceProfile { t0, u0, f_t0: profile_f(params, y, t0), g_u0: profile_g(params, y, u0) })
}

/// `(F̂(z), Ĝ(z)) = (−jz^n/2 + F(t₀), −jz^n/2 + G(u₀))` at `y = −j z^n`.
pub fn fhat_ghat(mode: &Mode, n: u32, z: f64) -> Result<(f64, f64)> {
    if !(z >= 1.0) {
        return Err(domain("fhat_ghat", format!("z must be >= 1, got {z}")));
    }
    let params = hyper_params(mode, n)?;
    let x = f64::from(mode.j) * zeta_map(z, n);
    let p = laplace_profile(&params, -x)?;
    Ok((-0.5 * x + p.f_t0, -0.5 * x + p.g_u0))
}
