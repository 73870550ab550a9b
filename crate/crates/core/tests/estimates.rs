use calabi_core::calabi_ode::{HypergeomParams, Mode};
use calabi_core::estimates::*;

fn show(certs: &[BoundCertificate]) {
    for c in certs {
        assert!(c.pass, "{}", c.record());
    }
}

#[test]
fn bessel_envelopes() {
    for nu in DEFAULT_NU {
        show(&certify_bessel(nu, &default_bessel_grid()).unwrap());
        let small = certify_bessel_small(nu, &log_grid(1e-3, 1.0, 32)).unwrap();
        assert!(small.pass, "{}", small.record());
    }
}

#[test]
fn case_a_and_product_default_grids() {
    for n in [2u32, 3] {
        for q in DEFAULT_Q {
            let p = HypergeomParams::from_q(n, q).unwrap();
            show(&certify_tri_ku_case_a(&p, &default_negative_grid()).unwrap());
            show(&certify_product(&p, &default_negative_grid()).unwrap());
        }
    }
}

#[test]
fn case_b_default_grids() {
    for n in [2u32, 3] {
        for q in default_case_b_q(n) {
            let p = HypergeomParams::from_q(n, q).unwrap();
            let certs = certify_case_b(&p, &default_negative_grid()).unwrap();
            show(&certs);
            assert!(certs[0].observed_upper_const <= 1.0 + PINNED_SLACK);
        }
    }
}

#[test]
fn beta_zero_collapses_m_ratio() {
    let p = HypergeomParams::from_q(2, -0.5).unwrap();
    assert_eq!(p.beta, 0.0);
    let certs = certify_case_b(&p, &[-10.0, -3.0]).unwrap();
    assert!((certs[1].observed_lower_const - 1.0).abs() < 1e-15);
    assert!((certs[1].observed_upper_const - 1.0).abs() < 1e-15);
    assert!(certs[0].observed_upper_const <= 1.0 && certs[0].observed_lower_const > 0.0);
}

#[test]
fn overlap_at_q_one() {
    for n in [2u32, 3] {
        let p = HypergeomParams::from_q(n, 1.0).unwrap();
        show(&certify_tri_ku_case_a(&p, &default_negative_grid()).unwrap());
        show(&certify_case_b(&p, &default_negative_grid()).unwrap());
    }
}

#[test]
fn refinement_stability() {
    let coarse = log_grid(1.0, 100.0, 33).into_iter().map(|y| -y).collect::<Vec<_>>();
    let fine = log_grid(1.0, 100.0, 65).into_iter().map(|y| -y).collect::<Vec<_>>();
    let p = HypergeomParams::from_q(3, 5.0).unwrap();
    let a = certify_tri_ku_case_a(&p, &coarse).unwrap();
    let b = certify_tri_ku_case_a(&p, &fine).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.observed_upper_const / y.observed_upper_const - 1.0).abs() < 0.1);
        assert!((x.observed_lower_const / y.observed_lower_const - 1.0).abs() < 0.1);
    }
    let again = certify_tri_ku_case_a(&p, &coarse).unwrap();
    assert_eq!(a, again);
}

#[test]
fn monotonicity_with_gap_weights() {
    let delta_b = 2.0 * (1.5f64 / 2.0).sqrt();
    let modes = [Mode::new(1, 1, 3.0).unwrap(), Mode::new(2, 2, 5.5).unwrap(), Mode::new(3, 1, 20.0).unwrap()];
    for n in [2u32, 3] {
        for mode in modes {
            for eta in [0.0, delta_b, 2.0 * delta_b] {
                let certs = check_monotonicity(&mode, n, eta, &default_z_grid(n, eta)).unwrap();
                show(&certs);
            }
        }
    }
}

#[test]
fn u0t0_hand_check() {
    let p = HypergeomParams::from_q(2, 1.0).unwrap();
    let c = certify_product(&p, &[-1.0]).unwrap();
    let t0 = (5f64.sqrt() - 1.0) / 2.0;
    let u0 = 0.5 * (1.0 + (1.0 + 4.0 + 2.0 * p.gamma_n).sqrt());
    let expect = u0 * t0 / (1.0 + 0.5 * p.gamma_n);
    assert!((c[2].observed_upper_const - expect).abs() < 1e-14);
}
