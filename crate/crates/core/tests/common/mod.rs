#![allow(dead_code)]

use calabi_core::calabi_ode::{ode_residual, FundamentalPair, Mode};

pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Numerov discretization of `u'' = q u + f` on `[a, b]` with Dirichlet data,
/// solved by the Thomas algorithm.
pub fn numerov(
    q: &dyn Fn(f64) -> f64,
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    ua: f64,
    ub: f64,
    steps: usize,
) -> Vec<f64> {
    let h = (b - a) / steps as f64;
    let h2 = h * h / 12.0;
    let x: Vec<f64> = (0..=steps).map(|i| a + h * i as f64).collect();
    let m = steps - 1;
    let (mut lower, mut diag, mut upper, mut rhs) = (vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]);
    for r in 0..m {
        let i = r + 1;
        lower[r] = 1.0 - h2 * q(x[i - 1]);
        diag[r] = -2.0 - 10.0 * h2 * q(x[i]);
        upper[r] = 1.0 - h2 * q(x[i + 1]);
        rhs[r] = h2 * (f(x[i - 1]) + 10.0 * f(x[i]) + f(x[i + 1]));
    }
    rhs[0] -= lower[0] * ua;
    rhs[m - 1] -= upper[m - 1] * ub;
    for r in 1..m {
        let w = lower[r] / diag[r - 1];
        diag[r] -= w * upper[r - 1];
        rhs[r] -= w * rhs[r - 1];
    }
    let mut u = vec![0.0; steps + 1];
    u[0] = ua;
    u[steps] = ub;
    u[m] = rhs[m - 1] / diag[m - 1];
    for r in (0..m - 1).rev() {
        u[r + 1] = (rhs[r] - upper[r] * u[r + 2]) / diag[r];
    }
    u
}

/// Sup-relative error of `u` against a Richardson-extrapolated Numerov
/// solution of `u'' = q u + f` with the same boundary values on `[a, b]`.
pub fn numerov_error(u: &dyn Fn(f64) -> f64, q: &dyn Fn(f64) -> f64, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let coarse = numerov(q, f, a, b, u(a), u(b), 3000);
    let fine = numerov(q, f, a, b, u(a), u(b), 6000);
    let (mut err, mut sup) = (0.0f64, 0.0f64);
    for i in (0..=3000).step_by(100) {
        let oracle = (16.0 * fine[2 * i] - coarse[i]) / 15.0;
        let z = a + (b - a) * i as f64 / 3000.0;
        err = err.max((u(z) - oracle).abs());
        sup = sup.max(oracle.abs());
    }
    err / sup
}

/// Residuals of `G` and `D` at `z`, with the exponential size divided out so
/// the difference stencil works in double precision.
pub fn homogeneous_residuals(pair: &FundamentalPair, mode: &Mode, n: u32, z: f64) -> (f64, f64) {
    let g0 = pair.log_g(z).unwrap().log_abs();
    let d0 = pair.log_d(z).unwrap().log_abs();
    let g = |x: f64| Ok((pair.log_g(x)?.log_abs() - g0).exp());
    let d = |x: f64| Ok((pair.log_d(x)?.log_abs() - d0).exp());
    (ode_residual(&g, mode, n, z, None).unwrap(), ode_residual(&d, mode, n, z, None).unwrap())
}

/// `M(β, α, y)` summed in exact rational arithmetic. Every `f64` is a dyadic
/// rational, so one power-of-two denominator covers all inputs and no
/// reductions are needed.
pub fn kummer_m_exact(beta: f64, alpha: f64, y: f64) -> f64 {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{Signed, ToPrimitive, Zero};

    let q: Vec<BigRational> = [beta, alpha, y].iter().map(|&x| BigRational::from_float(x).unwrap()).collect();
    let d = q.iter().map(|r| r.denom().clone()).max().unwrap();
    let int = |r: &BigRational| r.numer() * (&d / r.denom());
    let (b, a, y) = (int(&q[0]), int(&q[1]), int(&q[2]));
    let (mut num, mut den, mut sum) = (BigInt::from(1), BigInt::from(1), BigInt::from(1));
    let cutoff = BigInt::from(10u32).pow(40);
    for k in 0u32.. {
        let kd = &d * k;
        let down = (&a + &kd) * &d * (k + 1);
        num *= (&b + &kd) * &y;
        den *= &down;
        sum = sum * &down + &num;
        if num.is_zero() || (k > 10 && num.abs() * &cutoff < sum.abs()) {
            break;
        }
    }
    BigRational::new_raw(sum, den).to_f64().unwrap()
}
