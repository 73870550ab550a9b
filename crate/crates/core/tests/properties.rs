use calabi_core::calabi_ode::{fundamental_pair, numeric_wronskian, zeta_inverse, zeta_map, Mode};
use calabi_core::poisson::CubicSpline;
use calabi_core::quadrature::integrate_finite;
use calabi_core::specfun::{bessel_i_log, bessel_k_log, gamma, kummer_m_log, log_gamma, sin_pi};
use calabi_core::spectral::{toy_spectrum_with, CalabiParams, SpectrumTable, ToySpectrumConfig};
use calabi_core::LogValue;
use proptest::prelude::*;

mod common;
use common::kummer_m_exact;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn log_arithmetic_matches_floats(a in -1e3f64..1e3, b in -1e3f64..1e3) {
        let (la, lb) = (LogValue::from_f64(a), LogValue::from_f64(b));
        let scale = a.abs().max(b.abs()).max(1e-300);
        prop_assert!((la.add(lb).to_f64() - (a + b)).abs() <= 1e-13 * scale);
        prop_assert!((la.sub(lb).to_f64() - (a - b)).abs() <= 1e-13 * scale);
        prop_assert!(close((la * lb).to_f64(), a * b, 1e-13));
        if b != 0.0 {
            prop_assert!(close((la / lb).to_f64(), a / b, 1e-13));
        }
    }

    #[test]
    fn gamma_reflection_and_recurrence(x in -5.0f64..5.0) {
        prop_assume!((x - x.round()).abs() > 1e-3);
        let g = gamma(x).unwrap();
        prop_assert!(close(g * gamma(1.0 - x).unwrap(), std::f64::consts::PI / sin_pi(x), 1e-12));
        prop_assert!(close(gamma(x + 1.0).unwrap(), x * g, 1e-12));
        prop_assert_eq!(log_gamma(x).unwrap().sign(), g.signum() as i8);
    }

    #[test]
    fn bessel_k_recurrence_and_order(nu in 0.05f64..3.0, y in 0.05f64..80.0) {
        let k = |v: f64| bessel_k_log(v, y).unwrap();
        // K_{ν+1} = K_{ν−1} + (2ν/y) K_ν
        let rhs = k(nu - 1.0).add(LogValue::from_f64(2.0 * nu / y) * k(nu));
        prop_assert!((k(nu + 1.0).log_abs() - rhs.log_abs()).abs() < 1e-12 * rhs.log_abs().abs().max(1.0));
        prop_assert!(k(nu + 0.5).log_abs() > k(nu).log_abs());
        prop_assert!(bessel_k_log(nu, y * 1.1).unwrap().log_abs() < k(nu).log_abs());
    }

    #[test]
    fn bessel_i_recurrence(nu in 0.05f64..3.0, y in 0.05f64..80.0) {
        let i = |v: f64| bessel_i_log(v, y).unwrap();
        // I_{ν−1} − I_{ν+1} = (2ν/y) I_ν
        let lhs = i(nu - 1.0).sub(i(nu + 1.0));
        let rhs = LogValue::from_f64(2.0 * nu / y) * i(nu);
        prop_assert!((lhs.log_abs() - rhs.log_abs()).abs() < 1e-10 * rhs.log_abs().abs().max(1.0));
    }

    #[test]
    fn kummer_transformation(beta in -10.0f64..3.0, alpha in 0.2f64..3.0, y in -25.0f64..25.0) {
        // the far side is summed exactly so the law is not checked against itself
        if let Ok(l) = kummer_m_log(beta, alpha, y) {
            let m = l.to_f64();
            let mirrored = y.exp() * kummer_m_exact(alpha - beta, alpha, -y);
            prop_assert!((m - mirrored).abs() / m.abs().max(1.0) < 1e-9, "{} vs {}", m, mirrored);
        }
    }

    #[test]
    fn zeta_round_trips(z in 1.0f64..50.0, n in 2u32..6) {
        prop_assert!(close(zeta_inverse(zeta_map(z, n), n), z, 1e-13));
    }

    #[test]
    fn wronskian_is_constant(n in 2u32..5, j in 0u32..4, extra in 0.05f64..8.0, z in 1.0f64..6.0) {
        let floor = if j == 0 { 0.0 } else { f64::from((n - 1) * j) / 2.0 };
        let mode = Mode::new(1, j, floor + extra).unwrap();
        let pair = fundamental_pair(&mode, n).unwrap();
        let w = numeric_wronskian(&pair, z).unwrap();
        prop_assert!(close(w, pair.w_const, 1e-6), "{:?} n={} z={}: {} vs {}", mode, n, z, w, pair.w_const);
    }

    #[test]
    fn spectrum_text_round_trip(n in 2u32..5, j_max in 0u32..4, per_weight in 1usize..5, seed in any::<u64>(), jitter in 0.0f64..1.0) {
        let params = CalabiParams::new(n, 1.3, 0.7, 1.1).unwrap();
        let cfg = ToySpectrumConfig { j_max, per_weight, seed, jitter };
        let table = toy_spectrum_with(&params, &cfg).unwrap();
        let back = SpectrumTable::parse(&table.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), table.to_text());
        prop_assert!(table.modes().windows(2).all(|w| w[0].big_lambda <= w[1].big_lambda));
        prop_assert_eq!(table.modes()[0].mode, Mode::zero());
    }

    #[test]
    fn spline_interpolates(values in prop::collection::vec(-10.0f64..10.0, 3..20)) {
        let x: Vec<f64> = (0..values.len()).map(|i| 1.0 + 0.5 * i as f64).collect();
        let s = CubicSpline::natural(x.clone(), values.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&values) {
            prop_assert!((s.eval(*xi) - yi).abs() < 1e-12);
        }
        prop_assert_eq!(s.eval(x[0] - 1.0), 0.0);
    }

    #[test]
    fn quadrature_is_exact_on_polynomials(c in prop::collection::vec(-5.0f64..5.0, 1..8), a in -3.0f64..0.0, b in 0.1f64..3.0) {
        let p = |x: f64| c.iter().rev().fold(0.0, |acc, ci| acc * x + ci);
        let antiderivative = |x: f64| c.iter().enumerate().map(|(k, ci)| ci * x.powi(k as i32 + 1) / (k as f64 + 1.0)).sum::<f64>();
        let exact = antiderivative(b) - antiderivative(a);
        // size of the integrand sets the attainable accuracy
        let r = a.abs().max(b).max(1.0);
        let scale = (b - a) * c.iter().enumerate().map(|(k, ci)| ci.abs() * r.powi(k as i32)).sum::<f64>();
        let q = integrate_finite(p, a, b, 1e-12 * scale).unwrap();
        prop_assert!((q.value - exact).abs() < 1e-11 * scale);
    }
}
