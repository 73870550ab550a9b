use calabi_core::calabi_ode::{fundamental_pair, ode_residual, Mode};
use calabi_core::poisson::*;
use calabi_core::spectral::{toy_spectrum, CalabiParams};
use calabi_core::Error;

mod common;
use common::numerov_error;

fn exp_rhs() -> ModeCoefficient {
    ModeCoefficient::new(1, Xi::Exponential { amp: 1.0, eta0: -1.0 })
}

#[test]
fn matches_two_point_integration() {
    let cases = [
        (Mode::new(1, 0, 1.0).unwrap(), 2u32),
        (Mode::new(1, 1, 0.5).unwrap(), 2),
        (Mode::new(1, 1, 2.5).unwrap(), 2),
        (Mode::new(1, 0, 2.0).unwrap(), 3),
        (Mode::new(1, 0, 6.0).unwrap(), 3),
        (Mode::new(1, 1, 1.5).unwrap(), 3),
    ];
    for (mode, n) in cases {
        let sol = solve_mode(&mode, n, &exp_rhs(), 1.0, 4.0).unwrap();
        let q = |z: f64| mode.potential(n, z);
        let f = |z: f64| z.powi(n as i32 - 1) * (-z.powf(0.5 * f64::from(n))).exp();
        let rel = numerov_error(&|z| sol.eval(z).unwrap(), &q, &f, 1.0, 4.0);
        assert!(rel < 1e-6, "{mode:?} n={n}: {rel}");
    }
}

#[test]
fn residuals_of_particular_solutions() {
    let cases = [
        (Mode::new(1, 0, 1.0).unwrap(), 2u32, Xi::Exponential { amp: 1.0, eta0: -1.0 }),
        (Mode::new(2, 1, 2.5).unwrap(), 2, Xi::Constant(0.3)),
        (Mode::new(3, 2, 4.0).unwrap(), 3, Xi::Exponential { amp: -2.0, eta0: 0.2 }),
        (Mode::new(4, 0, 3.0).unwrap(), 4, Xi::Exponential { amp: 1.0, eta0: -0.5 }),
        (Mode::zero(), 2, Xi::Constant(1.0)),
    ];
    for (mode, n, xi) in cases {
        let rhs = xi.clone();
        let sol = solve_mode(&mode, n, &ModeCoefficient::new(0, xi), 1.0, 6.0).unwrap();
        for i in 0..10 {
            let z = 1.25 + 0.5 * i as f64;
            let u = |x: f64| sol.eval(x);
            let f = |x: f64| rhs.eval(n, x);
            let r = ode_residual(&u, &mode, n, z, Some(&f)).unwrap();
            assert!(r < 1e-6, "{mode:?} n={n} z={z}: {r}");
        }
    }
}

#[test]
fn sampled_rhs_and_linearity() {
    let mode = Mode::new(1, 0, 2.0).unwrap();
    let grid: Vec<f64> = (0..=40).map(|i| 1.0 + 0.1 * i as f64).collect();
    let a: Vec<f64> = grid.iter().map(|z| (-z).exp()).collect();
    let b: Vec<f64> = grid.iter().map(|z| (2.0 * z).sin() / z).collect();
    let combo: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 2.0 * x - 3.0 * y).collect();
    let solve = |v: &Vec<f64>| {
        solve_mode(&mode, 2, &ModeCoefficient::sampled(1, grid.clone(), v.clone()).unwrap(), 1.0, 5.0).unwrap()
    };
    let (sa, sb, sc) = (solve(&a), solve(&b), solve(&combo));
    for &z in &[1.0, 1.7, 2.4, 3.3, 4.9] {
        let lhs = sc.eval(z).unwrap();
        let rhs = 2.0 * sa.eval(z).unwrap() - 3.0 * sb.eval(z).unwrap();
        assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(rhs.abs()), "z={z}: {lhs} {rhs}");
    }
    let e1 =
        solve_mode(&mode, 2, &ModeCoefficient::new(1, Xi::Exponential { amp: 1.0, eta0: -0.7 }), 1.0, 5.0).unwrap();
    let e3 =
        solve_mode(&mode, 2, &ModeCoefficient::new(1, Xi::Exponential { amp: 3.0, eta0: -0.7 }), 1.0, 5.0).unwrap();
    for &z in &[1.0, 2.0, 4.0] {
        let (x, y) = (3.0 * e1.eval(z).unwrap(), e3.eval(z).unwrap());
        assert!((x - y).abs() < 1e-10 * x.abs());
    }
}

#[test]
fn solution_stays_under_growth_envelope() {
    let params = CalabiParams::new(2, 1.0, 1.0, 1.0).unwrap();
    let mode = Mode::new(1, 0, 1.0).unwrap();
    let sol =
        solve_mode(&mode, 2, &ModeCoefficient::new(1, Xi::Exponential { amp: 1.0, eta0: 0.2 }), 1.0, 6.0).unwrap();
    let env = mode_growth_bound(2, 1.0, params.delta_b(), 1.0, 0.2, 0.5).unwrap();
    let worst = (0..=20)
        .map(|i| 1.0 + 0.25 * i as f64)
        .map(|z| sol.eval(z).unwrap().abs() / env.eval(z))
        .fold(0.0f64, f64::max);
    assert!(worst.is_finite() && worst < 10.0, "observed constant {worst}");
}

#[test]
fn synthesis_is_linear_and_truncated() {
    let params = CalabiParams::new(2, 1.0, 1.0, 1.0).unwrap();
    let spec = toy_spectrum(&params, 1, 3, 0).unwrap();
    let cfg = SynthesisConfig { c_norm: 1e-30, ..SynthesisConfig::new(1.0, 4.0) };
    let c1 = ModeCoefficient::new(1, Xi::Exponential { amp: 1.0, eta0: -1.0 });
    let c2 = ModeCoefficient::new(2, Xi::Constant(0.5));
    let s = synthesize(&spec, &[c1.clone(), c2.clone()], 3, &cfg).unwrap();
    assert_eq!(s.terms().len(), 2);
    for &z in &[1.0, 2.0, 3.5] {
        let mut by_hand = 0.0;
        for (c, t) in [&c1, &c2].into_iter().zip(s.terms()) {
            let m = &spec.modes()[c.mode_index];
            by_hand += t.weight * solve_mode(&m.mode, 2, c, 1.0, 4.0).unwrap().eval(z).unwrap();
        }
        let agg = s.eval(z).unwrap();
        assert!((agg - by_hand).abs() < 1e-12 * by_hand.abs());
    }
    let single = synthesize(&spec, std::slice::from_ref(&c1), 3, &cfg).unwrap();
    let t = &single.terms()[0];
    assert_eq!(single.eval(2.0).unwrap(), t.weight * t.solution.eval(2.0).unwrap());
    let zero = synthesize(&spec, &[], 3, &cfg).unwrap();
    assert_eq!(zero.eval(2.0).unwrap(), 0.0);
    let loose = SynthesisConfig { c_norm: 1.0, ..SynthesisConfig::new(1.0, 4.0) };
    assert!(matches!(synthesize(&spec, &[c1], 2, &loose), Err(Error::TailTooLarge { .. })));
}

#[test]
fn decay_rate_recovery() {
    for &(n, lambda) in &[(2u32, 1.0), (3, 2.0), (4, 5.0)] {
        let nf = f64::from(n);
        let mode = Mode::new(1, 0, lambda).unwrap();
        let pair = fundamental_pair(&mode, n).unwrap();
        let c = 2.0 * (lambda / nf).sqrt();
        // window where c z^{n/2} runs over [10, 50]
        let (za, zb) = ((10.0 / c).powf(2.0 / nf), (50.0 / c).powf(2.0 / nf));
        let z: Vec<f64> = (0..40).map(|i| za + (zb - za) * i as f64 / 39.0).collect();
        let v: Vec<f64> = z.iter().map(|&x| pair.log_d(x).unwrap().to_f64()).collect();
        let (rate, _) = fit_decay_exponent(n, &z, &v).unwrap();
        assert!((rate / c - 1.0).abs() < 0.02, "n={n}: {rate} vs {c}");
    }
}

fn samples_of(mode: Mode, z: &[f64], f: impl Fn(f64) -> f64) -> ModeSamples {
    ModeSamples { mode, z: z.to_vec(), values: z.iter().map(|&x| f(x)).collect() }
}

#[test]
fn decomposition_round_trip() {
    let params = CalabiParams::new(2, 1.0, 1.0, 1.0).unwrap();
    let z0: Vec<f64> = (0..50).map(|i| 1.0 + 0.3 * i as f64).collect();
    let only_linear = decompose_harmonic(&[samples_of(Mode::zero(), &z0, |z| 3.0 * z + 5.0)], &params).unwrap();
    assert!((only_linear.kappa0 - 3.0).abs() < 1e-12 && (only_linear.c0 - 5.0).abs() < 1e-12);
    assert_eq!(only_linear.verdict, Verdict::LinearPlusDecaying);
    assert!(only_linear.decay_exponent.is_infinite());

    let m1 = Mode::new(1, 0, 1.0).unwrap();
    let m2 = Mode::new(2, 0, 4.0).unwrap();
    let p1 = fundamental_pair(&m1, 2).unwrap();
    let p2 = fundamental_pair(&m2, 2).unwrap();
    let zk: Vec<f64> = (0..30).map(|i| 5.0 + 0.6 * i as f64).collect();
    let input = [
        samples_of(Mode::zero(), &z0, |z| -0.5 * z + 2.0),
        samples_of(m1, &zk, |z| 4.0 * p1.log_d(z).unwrap().to_f64()),
        samples_of(m2, &zk, |z| -1.5 * p2.log_d(z).unwrap().to_f64()),
    ];
    let g = decompose_harmonic(&input, &params).unwrap();
    assert!((g.kappa0 + 0.5).abs() < 1e-6 && (g.c0 - 2.0).abs() < 1e-6);
    assert!((g.decay_exponent / params.delta_b() - 1.0).abs() < 0.02, "{}", g.decay_exponent);
    assert_eq!(g.verdict, Verdict::LinearPlusDecaying);

    let constant = decompose_harmonic(&[samples_of(Mode::zero(), &z0, |_| 7.0), input[1].clone()], &params).unwrap();
    assert_eq!(constant.verdict, Verdict::Constant);

    let growing = samples_of(m1, &zk, |z| p1.log_d(z).unwrap().to_f64() + 1e-10 * p1.log_g(z).unwrap().to_f64());
    let bad = decompose_harmonic(&[input[0].clone(), growing], &params).unwrap();
    assert_eq!(bad.verdict, Verdict::GapViolation);

    let short: Vec<f64> = vec![1.0, 2.0, 3.0];
    assert!(matches!(
        decompose_harmonic(&[samples_of(Mode::zero(), &short, |z| z)], &params),
        Err(Error::FitDegenerate(_))
    ));
}

#[test]
fn neumann_classification() {
    let params = CalabiParams::new(2, 1.5, 1.0, 1.0).unwrap();
    let spec = toy_spectrum(&params, 2, 4, 3).unwrap();
    let eps = 0.5 * params.eps_x();
    let g = classify_neumann(&spec, 0.0, &[], eps, true).unwrap();
    assert_eq!(g.verdict, Verdict::Constant);
    let g = classify_neumann(&spec, 2.0, &[0.0, 0.0], eps, false).unwrap();
    assert_eq!(g.verdict, Verdict::LinearPlusDecaying);
    assert_eq!(g.kappa0, 2.0);
    assert!(g.coefficients.is_empty());
    let g = classify_neumann(&spec, 0.0, &[0.1], eps, false).unwrap();
    let dp = fundamental_pair(&spec.modes()[1].mode, 2).unwrap().log_d_prime(1.5).unwrap().to_f64();
    assert_eq!(g.coefficients.len(), 1);
    assert_eq!(g.coefficients[0].0, 1);
    assert!((g.coefficients[0].1 - 0.1 / dp).abs() < 1e-14 * (0.1 / dp).abs());
    assert!(matches!(classify_neumann(&spec, 0.0, &[0.1], eps, true), Err(Error::Inconsistent(_))));
    assert!(classify_neumann(&spec, 0.0, &[], 2.0 * params.delta_b(), true).is_err());
}

#[test]
fn dirichlet_classification() {
    let params = CalabiParams::new(3, 1.5, 2.0, 1.0).unwrap();
    let spec = toy_spectrum(&params, 1, 3, 0).unwrap();
    let eps = 0.5 * params.eps_x();
    let g = classify_dirichlet(&spec, &[0.0, 0.0, 0.0], Some(1.0), eps).unwrap();
    assert_eq!(g.linear_part(1.5), 0.0);
    assert_eq!(g.linear_part(4.0), 2.5);
    assert!(g.coefficients.is_empty());
    assert!(matches!(classify_dirichlet(&spec, &[0.0], None, eps), Err(Error::NormalizationMissing)));
    let g = classify_dirichlet(&spec, &[0.0, 1e-3], Some(1.0), eps).unwrap();
    assert_eq!(g.verdict, Verdict::GapViolation);
    let d = fundamental_pair(&spec.modes()[1].mode, 3).unwrap().d(1.5).unwrap();
    assert!((g.coefficients[0].1 - 1e-3 / d).abs() < 1e-15 * (1e-3 / d).abs());
}
