use num_complex::Complex;

use crate::error::{domain, Result};
use crate::scalar::{attainable, from_usize, lit, Real};

use super::function::AnalyticFunction;

const START_SAMPLES: usize = 64;
const MAX_SAMPLES: usize = 8192;

/// `f^{(k)}(x)` from the Cauchy integral on the circle `|z − x| = radius`,
/// discretised by the trapezoid rule. The sample count doubles from 64 until
/// two successive estimates agree to `1e-12` (relative to `max(1, |value|)`).
pub fn derivative_eval<T: Real>(f: &AnalyticFunction<T>, x: T, k: usize, radius: T) -> Result<T> {
    if k == 0 {
        return Ok(f.eval_real(x));
    }
    let delta = f.delta_at(x)?;
    if !(radius > T::zero()) || radius >= delta {
        return domain(format!("derivative radius {radius} must lie in (0, δ_D({x}) = {delta})"));
    }
    let target = attainable(lit::<T>(1e-12));
    let mut prev = cauchy_sum(f, x, k, radius, START_SAMPLES);
    let mut m = START_SAMPLES * 2;
    while m <= MAX_SAMPLES {
        let cur = cauchy_sum(f, x, k, radius, m);
        if (cur - prev).abs() <= target * cur.abs().max(T::one()) {
            return Ok(cur);
        }
        prev = cur;
        m *= 2;
    }
    Ok(prev)
}

fn cauchy_sum<T: Real>(f: &AnalyticFunction<T>, x: T, k: usize, radius: T, m: usize) -> T {
    let mut acc = Complex::new(T::zero(), T::zero());
    let step = T::TAU() / from_usize(m);
    let kf = from_usize::<T>(k);
    for j in 0..m {
        let theta = step * from_usize(j);
        let (s, c) = theta.sin_cos();
        let z = Complex::new(x + radius * c, radius * s);
        let (sk, ck) = (kf * theta).sin_cos();
        acc = acc + f.eval(z) * Complex::new(ck, -sk);
    }
    let factorial = (1..=k).fold(T::one(), |p, i| p * from_usize(i));
    (acc * (factorial / (from_usize::<T>(m) * radius.powi(k as i32)))).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::polynomial_function;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_derivatives() {
        let sq = polynomial_function(vec![0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(derivative_eval(&sq, 0.0, 1, 0.1).unwrap(), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(derivative_eval(&sq, 0.0, 2, 0.1).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(derivative_eval(&sq, 0.5, 0, 0.1).unwrap(), 0.25);
    }

    #[test]
    fn exponential_third_derivative() {
        let e = AnalyticFunction::entire(|z: Complex<f64>| z.exp(), 16f64.exp(), true);
        assert_abs_diff_eq!(derivative_eval(&e, 0.0, 3, 1.0).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn matches_central_differences() {
        type Case = (AnalyticFunction<f64>, fn(f64) -> f64);
        let funcs: Vec<Case> = vec![
            (AnalyticFunction::entire(|z| z.sin(), 1e7, true), f64::sin),
            (AnalyticFunction::entire(|z| (z * 0.5).exp() * z, 1e4, true), |x| (0.5 * x).exp() * x),
        ];
        for (f, g) in funcs {
            for &x in &[-0.7, 0.0, 0.3, 0.9] {
                let h = 1e-4;
                let d1 = (g(x + h) - g(x - h)) / (2.0 * h);
                let d2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
                assert_abs_diff_eq!(derivative_eval(&f, x, 1, 0.1).unwrap(), d1, epsilon = 1e-6);
                assert_abs_diff_eq!(derivative_eval(&f, x, 2, 0.1).unwrap(), d2, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn radius_must_fit_domain() {
        let sq = polynomial_function(vec![0.0, 0.0, 1.0]);
        // the polynomial lives on the disk of radius 16, so δ(1) = 15
        assert!(derivative_eval(&sq, 1.0, 1, 15.0).is_err());
        assert!(derivative_eval(&sq, 1.0, 1, 0.0).is_err());
    }
}
