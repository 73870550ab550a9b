//! Cross-section eigendata: the `Λ_k` assembly, gap constants, decay bounds
//! and a synthetic spectrum generator.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calabi_ode::Mode;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalabiParams {
    pub n: u32,
    pub z0: f64,
    pub lambda_d: f64,
    pub delta: f64,
}

impl CalabiParams {
    pub fn new(n: u32, z0: f64, lambda_d: f64, delta: f64) -> Result<CalabiParams> {
        let p = CalabiParams { n, z0, lambda_d, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {}", self.n)));
        }
        for (name, v) in [("z0", self.z0), ("lambda_D", self.lambda_d), ("delta", self.delta)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// `δ_b = 2√(λ_D/n)`.
    pub fn delta_b(&self) -> f64 {
        2.0 * (self.lambda_d / f64::from(self.n)).sqrt()
    }

    /// `ε_X = min(δ, δ_b)`.
    pub fn eps_x(&self) -> f64 {
        self.delta.min(self.delta_b())
    }
}

pub fn gap_constants(params: &CalabiParams) -> (f64, f64) {
    (params.delta_b(), params.eps_x())
}

/// `Λ = λ/z₀ + n z₀^{n−1} j²`.
pub fn assemble_lambda(mode: &Mode, params: &CalabiParams) -> f64 {
    let j = f64::from(mode.j);
    mode.lambda / params.z0 + f64::from(params.n) * params.z0.powi(params.n as i32 - 1) * j * j
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMode {
    pub mode: Mode,
    pub big_lambda: f64,
}

/// Modes sorted by `Λ`, with the `Λ = 0` mode first.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub params: CalabiParams,
    modes: Vec<SpectralMode>,
}

impl SpectrumTable {
    /// Validates every mode, assembles `Λ` and sorts; ties keep input order.
    pub fn new(params: CalabiParams, modes: Vec<Mode>) -> Result<SpectrumTable> {
        params.validate()?;
        let mut out = Vec::with_capacity(modes.len());
        for m in modes {
            m.validate(params.n, Some(params.lambda_d))?;
            out.push(SpectralMode { mode: m, big_lambda: assemble_lambda(&m, &params) });
        }
        out.sort_by(|a, b| a.big_lambda.total_cmp(&b.big_lambda));
        match out.first() {
            Some(first) if first.mode.k == 0 => {}
            _ => return Err(Error::InvalidParams("spectrum must contain the k = 0 mode".into())),
        }
        if out.iter().skip(1).any(|m| m.mode.k == 0) {
            return Err(Error::InvalidParams("duplicate k = 0 mode".into()));
        }
        Ok(SpectrumTable { params, modes: out })
    }

    pub fn modes(&self) -> &[SpectralMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Header line, column line, then `k,j,lambda,Lambda` rows.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = format!(
            "# spectrum n={} z0={:.16e} lambda_D={:.16e} delta={:.16e}\nk,j,lambda,Lambda\n",
            p.n, p.z0, p.lambda_d, p.delta
        );
        for m in &self.modes {
            let _ = writeln!(s, "{},{},{:.16e},{:.16e}", m.mode.k, m.mode.j, m.mode.lambda, m.big_lambda);
        }
        s
    }

    /// Inverse of [`SpectrumTable::to_text`]; `Λ` is recomputed and must agree.
    /// Parameters may be spread over several leading `#` lines.
    pub fn parse(text: &str) -> Result<SpectrumTable> {
        let bad = |msg: String| Error::InvalidParams(format!("spectrum table: {msg}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty()).peekable();
        let mut header = String::new();
        while let Some(c) = lines.next_if(|l| l.starts_with('#')) {
            header.push_str(&c[1..]);
            header.push(' ');
        }
        if header.is_empty() {
            return Err(bad("missing '#' header".into()));
        }
        let (mut n, mut z0, mut ld, mut delta) = (None, None, None, None);
        for tok in header.split_whitespace() {
            if let Some((k, v)) = tok.split_once('=') {
                let num = || v.parse::<f64>().map_err(|_| bad(format!("bad value for {k}: {v}")));
                match k {
                    "n" => n = Some(v.parse::<u32>().map_err(|_| bad(format!("bad n: {v}")))?),
                    "z0" => z0 = Some(num()?),
                    "lambda_D" => ld = Some(num()?),
                    "delta" => delta = Some(num()?),
                    _ => {}
                }
            }
        }
        let params = CalabiParams::new(
            n.ok_or_else(|| bad("header lacks n".into()))?,
            z0.ok_or_else(|| bad("header lacks z0".into()))?,
            ld.ok_or_else(|| bad("header lacks lambda_D".into()))?,
            delta.ok_or_else(|| bad("header lacks delta".into()))?,
        )?;
        let cols = lines.next().ok_or_else(|| bad("missing column line".into()))?;
        if cols.trim() != "k,j,lambda,Lambda" {
            return Err(bad(format!("unexpected columns: {cols}")));
        }
        let mut modes = Vec::new();
        for line in lines {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 4 {
                return Err(bad(format!("expected 4 fields: {line}")));
            }
            let k = f[0].parse::<usize>().map_err(|_| bad(format!("bad k: {}", f[0])))?;
            let j = f[1].parse::<u32>().map_err(|_| bad(format!("bad j: {}", f[1])))?;
            let lambda = f[2].parse::<f64>().map_err(|_| bad(format!("bad lambda: {}", f[2])))?;
            let big = f[3].parse::<f64>().map_err(|_| bad(format!("bad Lambda: {}", f[3])))?;
            let mode = Mode::new(k, j, lambda)?;
            let expect = assemble_lambda(&mode, &params);
            if (big - expect).abs() > 1e-12 * expect.abs().max(1.0) {
                return Err(bad(format!("row k={k}: Lambda {big} disagrees with assembled {expect}")));
            }
            modes.push(mode);
        }
        SpectrumTable::new(params, modes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToySpectrumConfig {
    pub j_max: u32,
    pub per_weight: usize,
    pub seed: u64,
    /// Each ladder rung `m λ_D` is moved up by `jitter · λ_D · U[0, 1)`.
    pub jitter: f64,
}

/// Arithmetic ladder `λ = (n−1)j/2 + m λ_D`; a stand-in for a real divisor
/// spectrum, useful only for exercising summation and truncation.
pub fn toy_spectrum(params: &CalabiParams, j_max: u32, per_weight: usize, seed: u64) -> Result<SpectrumTable> {
    toy_spectrum_with(params, &ToySpectrumConfig { j_max, per_weight, seed, jitter: 0.0 })
}

pub fn toy_spectrum_with(params: &CalabiParams, cfg: &ToySpectrumConfig) -> Result<SpectrumTable> {
    if cfg.per_weight == 0 {
        return Err(Error::InvalidParams("per_weight must be >= 1".into()));
    }
    if !(cfg.jitter >= 0.0 && cfg.jitter.is_finite()) {
        return Err(Error::InvalidParams(format!("jitter must be >= 0, got {}", cfg.jitter)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rung = |m: usize| -> f64 {
        let u: f64 = rng.gen();
        params.lambda_d * (m as f64 + cfg.jitter * u)
    };
    let mut modes = vec![Mode::zero()];
    for m in 1..cfg.per_weight {
        modes.push(Mode { k: 0, j: 0, lambda: rung(m) });
    }
    for j in 1..=cfg.j_max {
        let base = f64::from(params.n - 1) * f64::from(j) / 2.0;
        for m in 1..=cfg.per_weight {
            modes.push(Mode { k: 0, j, lambda: base + rung(m) });
        }
    }
    // provisional k so validation sees nonzero modes, then index by sorted order
    for (i, m) in modes.iter_mut().enumerate().skip(1) {
        m.k = i;
    }
    let table = SpectrumTable::new(*params, modes)?;
    let modes = table.modes.iter().enumerate().map(|(i, sm)| Mode { k: i, ..sm.mode }).collect();
    SpectrumTable::new(*params, modes)
}

/// `c / Λ^{K₀}`.
pub fn fourier_decay_bound(big_lambda: f64, k0: u32, c_norm: f64) -> Result<f64> {
    if !(big_lambda > 0.0) {
        return Err(domain("fourier_decay_bound", format!("Lambda must be positive, got {big_lambda}")));
    }
    if !(c_norm >= 0.0) {
        return Err(domain("fourier_decay_bound", "c_norm must be >= 0"));
    }
    Ok(c_norm / big_lambda.powi(k0 as i32))
}

/// Power of `Λ_k` bounding `|∇^d φ_k|_∞`; `n/2` for `d = 0`.
pub fn eigenfunction_sup_exponent(n: u32, deriv_order: u32) -> f64 {
    if deriv_order == 0 {
        return f64::from(n) / 2.0;
    }
    let m = 2 * n - 1;
    0.5 * f64::from(m / 2) + f64::from(deriv_order + 1) / 2.0
}
