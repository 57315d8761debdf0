//! Orthonormal polynomials through their three-term recurrence
//! `b_{k+1} p_{k+1}(x) = (x − a_k) p_k(x) − b_k p_{k−1}(x)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

use super::integrate::integrate_real;
use super::weight::{WeightKind, WeightMeasure};

#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalPolynomials<T> {
    p0: T,
    /// `a_0 … a_{n}`
    diag: Vec<T>,
    /// `b_1 … b_{n+1}`
    offdiag: Vec<T>,
}

impl<T: Real> OrthonormalPolynomials<T> {
    /// Highest degree available.
    pub fn degree(&self) -> usize {
        self.diag.len() - 1
    }

    pub fn recurrence(&self) -> (&[T], &[T]) {
        (&self.diag, &self.offdiag)
    }

    pub fn constant(&self) -> T {
        self.p0
    }

    /// `p_0(z), …, p_n(z)`.
    pub fn eval_all(&self, z: Complex<T>) -> Vec<Complex<T>> {
        let n = self.degree();
        let mut out = Vec::with_capacity(n + 1);
        let mut prev = Complex::new(T::zero(), T::zero());
        let mut cur = Complex::new(self.p0, T::zero());
        out.push(cur);
        for k in 0..n {
            let bk = if k == 0 { T::zero() } else { self.offdiag[k - 1] };
            let next = ((z - self.diag[k]) * cur - prev * bk) / self.offdiag[k];
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    pub fn eval(&self, k: usize, z: Complex<T>) -> Complex<T> {
        self.eval_all(z)[k]
    }

    pub fn eval_real_all(&self, x: T) -> Vec<T> {
        self.eval_all(Complex::new(x, T::zero())).into_iter().map(|c| c.re).collect()
    }

    /// `(p_n(x), p_n'(x))` for the highest degree `n`.
    pub fn value_and_derivative(&self, x: T) -> (T, T) {
        let n = self.degree();
        let (mut p_prev, mut p) = (T::zero(), self.p0);
        let (mut d_prev, mut d) = (T::zero(), T::zero());
        for k in 0..n {
            let bk = if k == 0 { T::zero() } else { self.offdiag[k - 1] };
            let p_next = ((x - self.diag[k]) * p - bk * p_prev) / self.offdiag[k];
            let d_next = (p + (x - self.diag[k]) * d - bk * d_prev) / self.offdiag[k];
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        (p, d)
    }
}

/// Orthonormal polynomials `p_0 … p_{n_max}` of the measure (one extra
/// recurrence coefficient is kept so that Gauss rules of size `n_max + 1` can
/// be formed).
///
/// Lebesgue and Chebyshev use closed-form coefficients; custom weights run a
/// discretised Stieltjes procedure on a composite Gauss–Legendre grid.
pub fn orthonormal_polys<T: Real>(w: &WeightMeasure<T>, n_max: usize) -> Result<OrthonormalPolynomials<T>> {
    match w.kind() {
        WeightKind::Lebesgue => {
            let offdiag = (1..=n_max + 1)
                .map(|k| {
                    let k = from_usize::<T>(k);
                    k / (lit::<T>(4.0) * k * k - T::one()).sqrt()
                })
                .collect();
            Ok(OrthonormalPolynomials {
                p0: lit::<T>(0.5).sqrt(),
                diag: vec![T::zero(); n_max + 1],
                offdiag,
            })
        }
        WeightKind::Chebyshev => {
            let offdiag = (1..=n_max + 1)
                .map(|k| if k == 1 { lit::<T>(0.5).sqrt() } else { lit(0.5) })
                .collect();
            Ok(OrthonormalPolynomials {
                p0: T::PI().sqrt().recip(),
                diag: vec![T::zero(); n_max + 1],
                offdiag,
            })
        }
        WeightKind::Custom => stieltjes(w, n_max),
    }
}

fn stieltjes<T: Real>(w: &WeightMeasure<T>, n_max: usize) -> Result<OrthonormalPolynomials<T>> {
    let (nodes, weights) = discretize(w, n_max)?;
    let mass = weights.iter().fold(T::zero(), |s, &v| s + v);
    let reference = integrate_real(|_| T::one(), w, lit(1e-12))?;
    if (mass - reference.value).abs() > lit::<T>(1e-10) * reference.value.abs().max(T::one()) {
        return Err(Error::Integration {
            estimate: mass.to_f64().unwrap_or(f64::NAN),
            error_estimate: (mass - reference.value).abs().to_f64().unwrap_or(f64::NAN),
        });
    }
    let p0 = mass.sqrt().recip();
    let mut prev = vec![T::zero(); nodes.len()];
    let mut cur = vec![p0; nodes.len()];
    let mut diag = Vec::with_capacity(n_max + 1);
    let mut offdiag = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let a = nodes
            .iter()
            .zip(&weights)
            .zip(&cur)
            .fold(T::zero(), |s, ((&x, &wt), &p)| s + wt * x * p * p);
        let bk = if k == 0 { T::zero() } else { offdiag[k - 1] };
        let mut next: Vec<T> = nodes
            .iter()
            .zip(cur.iter().zip(&prev))
            .map(|(&x, (&p, &q))| (x - a) * p - bk * q)
            .collect();
        let norm = next
            .iter()
            .zip(&weights)
            .fold(T::zero(), |s, (&v, &wt)| s + wt * v * v)
            .sqrt();
        if !(norm > T::zero()) {
            return Err(Error::Domain(format!("measure supports too few points for degree {}", k + 1)));
        }
        next.iter_mut().for_each(|v| *v = *v / norm);
        diag.push(a);
        offdiag.push(norm);
        prev = cur;
        cur = next;
    }
    Ok(OrthonormalPolynomials { p0, diag, offdiag })
}

/// Composite Gauss–Legendre discretisation of `α`, exact for polynomials of
/// degree well beyond `2(n_max + 1)` when the density is smooth.
fn discretize<T: Real>(w: &WeightMeasure<T>, n_max: usize) -> Result<(Vec<T>, Vec<T>)> {
    use super::weight::Endpoint;
    let order = (2 * n_max + 8).clamp(16, 64);
    let base = super::gauss::gauss_rule(&WeightMeasure::<T>::lebesgue(), order)?;
    let panels = 32;
    let singular = w.endpoint() == Endpoint::IntegrableSingularity;
    let (lo, hi) = if singular { (T::zero(), T::PI()) } else { (-T::one(), T::one()) };
    let width = (hi - lo) / from_usize(panels);
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let left = lo + width * from_usize(p);
        for (&t, wt) in base.nodes().iter().zip(base.value_weights()) {
            let s = left + width * (t + T::one()) * lit(0.5);
            let ws = wt * width * lit(0.5);
            if singular {
                let x = s.cos();
                nodes.push(x);
                weights.push(ws * w.density(x) * s.sin());
            } else {
                nodes.push(s);
                weights.push(ws * w.density(s));
            }
        }
    }
    Ok((nodes, weights))
}
