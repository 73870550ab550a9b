//! Command-line front end behind the `calabi` binary.
//!
//! A `--config` file holds `key=value` lines whose keys are the long flag
//! names; explicit flags win over the file.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::calabi_ode::{ode_residual, HypergeomParams, Mode};
use crate::error::Error;
use crate::estimates::{self, BoundCertificate};
use crate::poisson::{classify_dirichlet, classify_neumann, solve_mode, GrowthClass, ModeCoefficient, Xi};
use crate::specfun;
use crate::spectral::{toy_spectrum_with, CalabiParams, SpectrumTable, ToySpectrumConfig};
use crate::LogValue;

/// Accuracy the special-function layer is tested to (relative).
const SPECFUN_TOLERANCE: f64 = 1e-12;
/// Slope below which a mode-0 fit counts as constant.
const CLASSIFY_TOLERANCE: f64 = 1e-9;
/// Agreement required between stored and assembled `Λ` when reading tables.
const SPECTRUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "calabi",
    version,
    about = "Special functions, bound certificates and mode solvers for the Calabi model space"
)]
pub struct Cli {
    /// `key=value` file; keys are long flag names, lists comma-separated.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function on a list of arguments.
    Specfun(SpecfunArgs),
    /// Certify the uniform estimates on a grid.
    Certify(CertifyArgs),
    /// Solve one Poisson mode and sample it.
    Solve(SolveArgs),
    /// Liouville classification from boundary data.
    Classify(ClassifyArgs),
    /// Generate a synthetic spectrum table.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FnName {
    #[value(name = "I")]
    I,
    #[value(name = "K")]
    K,
    #[value(name = "M")]
    M,
    #[value(name = "U")]
    U,
    #[value(name = "T")]
    T,
    #[value(name = "gamma")]
    Gamma,
}

#[derive(Debug, Args)]
pub struct SpecfunArgs {
    #[arg(long = "fn", value_enum)]
    pub func: Option<FnName>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Certify {
    Bessel,
    BesselSmall,
    CaseA,
    CaseB,
    Product,
    Monotone,
    All,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub what: Certify,
    #[arg(long, value_delimiter = ',')]
    pub nu: Vec<f64>,
    /// Grid range in `|y|`.
    #[arg(long)]
    pub ymin: Option<f64>,
    #[arg(long)]
    pub ymax: Option<f64>,
    #[arg(long, default_value_t = estimates::DEFAULT_POINTS)]
    pub points: usize,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub n: Vec<u32>,
    /// Mode used by the monotonicity check.
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub eta: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RhsKind {
    Exp,
    Const,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub j: u32,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// `exp`: amp·e^{eta0 z^{n/2}}; `const`: amp.
    #[arg(long, value_enum, default_value = "exp")]
    pub xi: RhsKind,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub amp: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub eta0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub z1: f64,
    #[arg(long, default_value_t = 4.0)]
    pub zmax: f64,
    #[arg(long, default_value_t = 31)]
    pub points: usize,
    /// Add a scaled ODE residual column at interior points.
    #[arg(long)]
    pub residual: bool,
    /// Largest accepted residual.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumSource {
    /// Read the table from a file instead of generating one.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = 1.0)]
    pub z0: f64,
    #[arg(long = "lambda-d", default_value_t = 1.0)]
    pub lambda_d: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long = "j-max", default_value_t = 2)]
    pub j_max: u32,
    #[arg(long = "per-weight", default_value_t = 4)]
    pub per_weight: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub neumann: bool,
    #[arg(long)]
    pub dirichlet: bool,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub kappa0: f64,
    /// Neumann fluxes for the `k ≥ 1` modes in table order.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub fluxes: Vec<f64>,
    /// Dirichlet values, mode 0 first.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub values: Vec<f64>,
    /// Dirichlet slope normalization.
    #[arg(long, allow_negative_numbers = true)]
    pub normalization: Option<f64>,
    /// Growth exponent of the candidate; `eps_X / 2` when absent.
    #[arg(long)]
    pub growth: Option<f64>,
    #[arg(long = "expect-constant")]
    pub expect_constant: bool,
    #[command(flatten)]
    pub source: SpectrumSource,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: SpectrumSource,
}

/// Exit status 1 for configuration problems, 2 for numerical failures.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::InvalidMode(_) | Error::NormalizationMissing | Error::Domain { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| config_err(format!("config line {}: expected key=value", i + 1)))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn find_config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Appends config entries whose flags are absent from `args`.
fn merge_config(args: Vec<OsString>, config: &BTreeMap<String, String>) -> Result<Vec<OsString>, CliError> {
    let root = Cli::command();
    let names: Vec<String> = root.get_subcommands().map(|c| c.get_name().to_string()).collect();
    let sub_name = args.iter().skip(1).map(|a| a.to_string_lossy().to_string()).find(|a| names.contains(a));
    let present: Vec<String> = args
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let sub = sub_name.as_ref().and_then(|n| root.find_subcommand(n));
    let mut out = args.clone();
    for (key, value) in config {
        if key == "config" {
            return Err(config_err("config files cannot name another config"));
        }
        if present.iter().any(|p| p == key) {
            continue;
        }
        let arg = sub
            .and_then(|s| s.get_arguments().find(|a| a.get_long() == Some(key.as_str())))
            .or_else(|| root.get_arguments().find(|a| a.get_long() == Some(key.as_str())))
            .ok_or_else(|| config_err(format!("unknown config key '{key}'")))?;
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" => out.push(format!("--{key}").into()),
                "false" => {}
                v => return Err(config_err(format!("config key '{key}' expects true or false, got '{v}'"))),
            }
        } else {
            out.push(format!("--{key}={value}").into());
        }
    }
    Ok(out)
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

fn header(module: &str, tolerance: f64, extra: &str) -> String {
    let mut s = format!("# module={module} tolerance={tolerance:e}");
    if !extra.is_empty() {
        s.push(' ');
        s.push_str(extra);
    }
    s.push('\n');
    s
}

fn run_specfun(a: &SpecfunArgs) -> Result<String, CliError> {
    let func = a.func.ok_or_else(|| config_err("specfun needs --fn"))?;
    if a.y.is_empty() {
        return Err(config_err("specfun needs --y"));
    }
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| config_err(format!("--fn {func:?} needs --{name}")));
    let (nu, beta, alpha) = match func {
        FnName::I | FnName::K => (Some(need(a.nu, "nu")?), None, None),
        FnName::M | FnName::U | FnName::T => (None, Some(need(a.beta, "beta")?), Some(need(a.alpha, "alpha")?)),
        FnName::Gamma => (None, None, None),
    };
    let values: Vec<LogValue> =
        a.y.par_iter()
            .map(|&y| -> Result<LogValue, Error> {
                match func {
                    FnName::I => specfun::bessel_i_log(nu.unwrap_or_default(), y),
                    FnName::K => specfun::bessel_k_log(nu.unwrap_or_default(), y),
                    FnName::M => specfun::kummer_m_log(beta.unwrap_or_default(), alpha.unwrap_or_default(), y),
                    FnName::U => specfun::tricomi_u_log(beta.unwrap_or_default(), alpha.unwrap_or_default(), y),
                    FnName::T => specfun::tri_t(beta.unwrap_or_default(), alpha.unwrap_or_default(), y),
                    FnName::Gamma => specfun::log_gamma(y),
                }
            })
            .collect::<Result<_, _>>()?;
    let name = format!("{func:?}").replace("Gamma", "gamma");
    let mut s = header("specfun", SPECFUN_TOLERANCE, "");
    s.push_str("fn,nu,beta,alpha,y,value,sign,log_abs\n");
    for (y, v) in a.y.iter().zip(values) {
        let _ = writeln!(
            s,
            "{name},{},{},{},{},{},{},{}",
            fmt_opt(nu),
            fmt_opt(beta),
            fmt_opt(alpha),
            fmt(*y),
            fmt(v.to_f64()),
            v.sign(),
            fmt(v.log_abs())
        );
    }
    Ok(s)
}

fn run_certify(a: &CertifyArgs) -> Result<String, CliError> {
    if a.points == 0 {
        return Err(config_err("--points must be >= 1"));
    }
    let wants = |c: Certify| a.what == c || a.what == Certify::All;
    let grid = |lo: f64, hi: f64| -> Result<Vec<f64>, CliError> {
        let (lo, hi) = (a.ymin.unwrap_or(lo), a.ymax.unwrap_or(hi));
        if !(lo > 0.0 && hi >= lo) {
            return Err(config_err(format!("need 0 < ymin <= ymax, got [{lo}, {hi}]")));
        }
        Ok(estimates::log_grid(lo, hi, a.points))
    };
    let nus = if a.nu.is_empty() { estimates::DEFAULT_NU.to_vec() } else { a.nu.clone() };
    let mut certs: Vec<BoundCertificate> = Vec::new();
    if wants(Certify::Bessel) {
        let g = grid(1.0, 100.0)?;
        for &nu in &nus {
            certs.extend(estimates::certify_bessel(nu, &g)?);
        }
    }
    if wants(Certify::BesselSmall) {
        let g = if a.what == Certify::All { estimates::log_grid(1e-3, 1.0, a.points) } else { grid(1e-3, 1.0)? };
        for &nu in &nus {
            certs.push(estimates::certify_bessel_small(nu, &g)?);
        }
    }
    let neg: Vec<f64> = grid(1.0, 100.0)?.into_iter().map(|y| -y).collect();
    for &n in &a.n {
        let qs_a = if a.q.is_empty() {
            estimates::DEFAULT_Q.to_vec()
        } else {
            a.q.iter().copied().filter(|&q| q >= 1.0).collect()
        };
        let qs_b = if a.q.is_empty() {
            estimates::default_case_b_q(n)
        } else {
            a.q.iter().copied().filter(|&q| q <= 1.0).collect()
        };
        for &q in &qs_a {
            let p = HypergeomParams::from_q(n, q)?;
            if wants(Certify::CaseA) {
                certs.extend(estimates::certify_tri_ku_case_a(&p, &neg)?);
            }
            if wants(Certify::Product) {
                certs.extend(estimates::certify_product(&p, &neg)?);
            }
        }
        if wants(Certify::CaseB) {
            for &q in &qs_b {
                certs.extend(estimates::certify_case_b(&HypergeomParams::from_q(n, q)?, &neg)?);
            }
        }
        if wants(Certify::Monotone) {
            let lambda = a.lambda.unwrap_or(f64::from((n + 1) * a.j) / 2.0 + 1.0);
            let mode = Mode::new(1, a.j, lambda)?;
            for &eta in &a.eta {
                certs.extend(estimates::check_monotonicity(&mode, n, eta, &estimates::default_z_grid(n, eta))?);
            }
        }
    }
    let mut s = header("estimates", estimates::MONOTONE_TOL, &format!("pinned_slack={:e}", estimates::PINNED_SLACK));
    s.push_str("# name|grid_spec|lower|upper|pass\n");
    for c in &certs {
        s.push_str(&c.record());
        s.push('\n');
    }
    if let Some(bad) = certs.iter().find(|c| !c.pass) {
        return Err(CliError::Numerical(format!("certificate {} failed: {}", bad.name, bad.record())));
    }
    Ok(s)
}

fn run_solve(a: &SolveArgs) -> Result<String, CliError> {
    if a.points < 2 {
        return Err(config_err("--points must be >= 2"));
    }
    let mode = if a.k == 0 {
        Mode::new(0, a.j, a.lambda.unwrap_or(0.0))?
    } else {
        Mode::new(a.k, a.j, a.lambda.ok_or_else(|| config_err("solve needs --lambda for k >= 1"))?)?
    };
    let xi = match a.xi {
        RhsKind::Exp => Xi::Exponential { amp: a.amp, eta0: a.eta0 },
        RhsKind::Const => Xi::Constant(a.amp),
    };
    let sol = solve_mode(&mode, a.n, &ModeCoefficient::new(a.k, xi.clone()), a.z1, a.zmax)?;
    let zs: Vec<f64> = (0..a.points).map(|i| a.z1 + (a.zmax - a.z1) * i as f64 / (a.points - 1) as f64).collect();
    let last = zs.len() - 1;
    let rows = zs
        .par_iter()
        .enumerate()
        .map(|(i, &z)| -> Result<(f64, Option<f64>), Error> {
            let u = sol.eval(z)?;
            let r = if a.residual && i > 0 && i < last {
                let f = |x: f64| xi.eval(a.n, x);
                Some(ode_residual(&|x| sol.eval(x), &mode, a.n, z, Some(&f))?)
            } else {
                None
            };
            Ok((u, r))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let extra = format!("n={} k={} j={} lambda={}", a.n, mode.k, mode.j, mode.lambda);
    let mut s = header("poisson", a.tolerance, &extra);
    s.push_str(if a.residual { "z,u,residual\n" } else { "z,u\n" });
    for (z, (u, r)) in zs.iter().zip(&rows) {
        if a.residual {
            let _ = writeln!(s, "{},{},{}", fmt(*z), fmt(*u), fmt_opt(*r));
        } else {
            let _ = writeln!(s, "{},{}", fmt(*z), fmt(*u));
        }
    }
    if let Some((z, r)) = zs.iter().zip(&rows).find_map(|(z, (_, r))| r.filter(|&r| r > a.tolerance).map(|r| (z, r))) {
        return Err(CliError::Numerical(format!("solve_mode: residual {r:e} at z = {z} exceeds {:e}", a.tolerance)));
    }
    Ok(s)
}

fn load_spectrum(src: &SpectrumSource) -> Result<SpectrumTable, CliError> {
    if let Some(path) = &src.spectrum {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        return Ok(SpectrumTable::parse(&text)?);
    }
    let params = CalabiParams::new(src.n, src.z0, src.lambda_d, src.delta)?;
    let cfg = ToySpectrumConfig { j_max: src.j_max, per_weight: src.per_weight, seed: src.seed, jitter: src.jitter };
    Ok(toy_spectrum_with(&params, &cfg)?)
}

fn growth_csv(g: &GrowthClass) -> String {
    let coeffs: Vec<String> = g.coefficients.iter().map(|(k, c)| format!("{k}:{}", fmt(*c))).collect();
    format!(
        "verdict,kappa0,c0,decay_exponent,residual,coefficients\n{},{},{},{},{},{}\n",
        g.verdict.as_str(),
        fmt(g.kappa0),
        fmt(g.c0),
        fmt(g.decay_exponent),
        fmt(g.residual),
        coeffs.join(";")
    )
}

fn run_classify(a: &ClassifyArgs) -> Result<String, CliError> {
    if a.neumann == a.dirichlet {
        return Err(config_err("classify needs exactly one of --neumann or --dirichlet"));
    }
    let spec = load_spectrum(&a.source)?;
    let growth = a.growth.unwrap_or(0.5 * spec.params.eps_x());
    let g = if a.neumann {
        classify_neumann(&spec, a.kappa0, &a.fluxes, growth, a.expect_constant)?
    } else {
        classify_dirichlet(&spec, &a.values, a.normalization, growth)?
    };
    let kind = if a.neumann { "neumann" } else { "dirichlet" };
    let mut s = header("poisson", CLASSIFY_TOLERANCE, &format!("problem={kind} modes={}", spec.len()));
    s.push_str(&growth_csv(&g));
    Ok(s)
}

fn run_spectrum(a: &SpectrumArgs) -> Result<String, CliError> {
    let spec = load_spectrum(&a.source)?;
    Ok(header("spectral", SPECTRUM_TOLERANCE, "") + &spec.to_text())
}

/// Parses `args` (program name first), merges the config file, runs the
/// command and writes its output. Returns the process exit status.
pub fn run_with_args(args: Vec<OsString>) -> i32 {
    match try_run(args) {
        Ok(None) => 0,
        Ok(Some(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message().lines().next().unwrap_or_default());
            e.exit_code()
        }
    }
}

/// Like [`run_with_args`] but returns the rendered output instead of printing
/// it when no `--out` file is given. `Ok(None)` means output went to a file.
pub fn try_run(args: Vec<OsString>) -> Result<Option<String>, CliError> {
    let args = match find_config_path(&args) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
            merge_config(args, &parse_config_file(&text)?)?
        }
        None => args,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Ok(Some(e.to_string()));
            }
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            return Err(config_err(first.trim_start_matches("error: ").to_string()));
        }
    };
    if cli.jobs == 0 {
        return Err(config_err("--jobs must be >= 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| config_err(format!("cannot start {} workers: {e}", cli.jobs)))?;
    let text = pool.install(|| match &cli.command {
        Command::Specfun(a) => run_specfun(a),
        Command::Certify(a) => run_certify(a),
        Command::Solve(a) => run_solve(a),
        Command::Classify(a) => run_classify(a),
        Command::Spectrum(a) => run_spectrum(a),
    })?;
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Option<String>, CliError> {
        try_run(std::iter::once("calabi").chain(args.iter().copied()).map(OsString::from).collect())
    }

    #[test]
    fn specfun_k_half() {
        let out = run(&["specfun", "--fn", "K", "--nu", "0.5", "--y", "1"]).unwrap().unwrap();
        let row = out.lines().nth(2).unwrap();
        let value: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert!((value - 0.4610685044478944).abs() < 1e-15);
        assert!(out.starts_with("# module=specfun"));
    }

    #[test]
    fn config_errors_exit_one() {
        assert_eq!(run(&["specfun", "--fn", "K", "--y", "1"]).unwrap_err().exit_code(), 1);
        assert_eq!(run(&["specfun", "--bogus"]).unwrap_err().exit_code(), 1);
        assert_eq!(run(&["classify", "--neumann", "--dirichlet"]).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn config_merge_prefers_flags() {
        let map = parse_config_file("nu = 0.25\ny=1,2\nresidual=true\n# comment\n").unwrap();
        let args: Vec<OsString> = ["calabi", "specfun", "--nu", "0.5"].iter().map(OsString::from).collect();
        let merged = merge_config(args, &map);
        // `residual` is not a specfun flag
        assert!(merged.is_err());
        let map = parse_config_file("nu=0.25\ny=1,2\nfn=K").unwrap();
        let args: Vec<OsString> = ["calabi", "specfun", "--nu", "0.5"].iter().map(OsString::from).collect();
        let merged: Vec<String> =
            merge_config(args, &map).unwrap().into_iter().map(|s| s.into_string().unwrap()).collect();
        assert!(merged.contains(&"--y=1,2".to_string()));
        assert!(!merged.iter().any(|a| a == "--nu=0.25"));
    }
}
