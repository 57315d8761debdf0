//! Gauss rules from the Jacobi matrix of the recurrence (Golub–Welsch),
//! polished by Newton steps on `p_n`.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

use super::orthopoly::orthonormal_polys;
use super::rule::QuadratureRule;
use super::weight::{WeightKind, WeightMeasure};

/// The `n`-point Gauss rule of the weight.
pub fn gauss_rule<T: Real>(w: &WeightMeasure<T>, n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::Domain("a Gauss rule needs n ≥ 1".into()));
    }
    if w.kind() == WeightKind::Custom {
        return Err(Error::Unsupported("Gauss rules are provided for lebesgue and chebyshev weights".into()));
    }
    // p_0 … p_n; the Jacobi matrix uses a_0..a_{n-1}, b_1..b_{n-1}.
    let polys = orthonormal_polys(w, n)?;
    let (diag, offdiag) = polys.recurrence();
    let mut d: Vec<T> = diag[..n].to_vec();
    let mut e: Vec<T> = offdiag[..n].to_vec();
    e[n - 1] = T::zero();
    tridiagonal_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let nodes: Vec<T> = d.iter().map(|&x| polish(&polys, x)).collect();
    let mut nodes = symmetrize(nodes);
    nodes.iter_mut().for_each(|x| *x = x.max(-T::one()).min(T::one()));

    // Christoffel numbers 1 / Σ_{k<n} p_k(x)^2.
    let weights = nodes
        .iter()
        .map(|&x| {
            let v = polys.eval_real_all(x);
            v[..n].iter().fold(T::zero(), |s, &p| s + p * p).recip()
        })
        .collect();
    QuadratureRule::from_weights(nodes, weights)
}

fn polish<T: Real>(polys: &super::orthopoly::OrthonormalPolynomials<T>, mut x: T) -> T {
    for _ in 0..8 {
        let (p, dp) = polys.value_and_derivative(x);
        if dp == T::zero() {
            break;
        }
        let step = p / dp;
        x = x - step;
        if step.abs() <= lit::<T>(2.0) * T::epsilon() * x.abs().max(T::epsilon()) {
            break;
        }
    }
    x
}

/// The supported weights are even, so nodes come in `±` pairs.
fn symmetrize<T: Real>(mut nodes: Vec<T>) -> Vec<T> {
    let n = nodes.len();
    for j in 0..n / 2 {
        let m = lit::<T>(0.5) * (nodes[n - 1 - j] - nodes[j]);
        nodes[j] = -m;
        nodes[n - 1 - j] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    nodes
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e[i]` (between rows `i` and `i + 1`; `e[n-1]` is ignored),
/// by implicit QL with Wilkinson shifts. Results overwrite `d`.
fn tridiagonal_eigenvalues<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let two = lit::<T>(2.0);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::Domain("tridiagonal eigenvalue iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let signed_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn small_legendre_rules() {
        let leb = WeightMeasure::<f64>::lebesgue();
        let g1 = gauss_rule(&leb, 1).unwrap();
        assert_eq!(g1.nodes(), &[0.0]);
        assert_abs_diff_eq!(g1.value_weights()[0], 2.0, epsilon = 1e-15);
        let g2 = gauss_rule(&leb, 2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(g2.nodes()[0], -r, epsilon = 1e-15);
        assert_abs_diff_eq!(g2.nodes()[1], r, epsilon = 1e-15);
        for w in g2.value_weights() {
            assert_abs_diff_eq!(w, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn chebyshev_closed_form() {
        let g = gauss_rule(&WeightMeasure::<f64>::chebyshev(), 3).unwrap();
        for (j, (&x, w)) in g.nodes().iter().zip(g.value_weights()).enumerate() {
            let expected = ((2.0 * (3 - j) as f64 - 1.0) * PI / 6.0).cos();
            assert_abs_diff_eq!(x, expected, epsilon = 1e-15);
            assert_abs_diff_eq!(w, PI / 3.0, epsilon = 1e-14);
        }
        let g = gauss_rule(&WeightMeasure::<f64>::chebyshev(), 40).unwrap();
        for (j, &x) in g.nodes().iter().enumerate() {
            let expected = ((2.0 * (40 - j) as f64 - 1.0) * PI / 80.0).cos();
            assert_abs_diff_eq!(x, expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn positivity_and_mass_up_to_64() {
        for w in [WeightMeasure::<f64>::lebesgue(), WeightMeasure::chebyshev()] {
            for n in 1..=64 {
                let g = gauss_rule(&w, n).unwrap();
                let ws = g.value_weights();
                assert!(ws.iter().all(|&v| v > 0.0), "n={n}");
                assert_abs_diff_eq!(ws.iter().sum::<f64>(), w.total_mass(), epsilon = 1e-12);
                assert!(g.nodes().windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn eigen_solver_against_companion_oracle() {
        // Legendre P3 roots: 0, ±√(3/5).
        let leb = WeightMeasure::<f64>::lebesgue();
        let g3 = gauss_rule(&leb, 3).unwrap();
        let r = (0.6f64).sqrt();
        assert_abs_diff_eq!(g3.nodes()[0], -r, epsilon = 1e-15);
        assert_abs_diff_eq!(g3.nodes()[2], r, epsilon = 1e-15);
        let ws = g3.value_weights();
        assert_abs_diff_eq!(ws[0], 5.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ws[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_custom_and_zero() {
        let w = WeightMeasure::custom(|_x: f64| 1.0, crate::quadrature::Endpoint::Regular, true).unwrap();
        assert!(matches!(gauss_rule(&w, 3), Err(Error::Unsupported(_))));
        assert!(gauss_rule(&WeightMeasure::<f64>::lebesgue(), 0).is_err());
    }

    #[test]
    fn f32_rule() {
        let g = gauss_rule(&WeightMeasure::<f32>::lebesgue(), 5).unwrap();
        let s: f32 = g.value_weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-5);
    }
}
