use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::domains::NiceDomain;
use crate::error::Result;
use crate::hyperbolic::ScaledDiskMap;
use crate::scalar::{lit, Real};

type ComplexFn<T> = Arc<dyn Fn(Complex<T>) -> Complex<T> + Send + Sync>;
type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A bounded analytic function on a nice domain: an element of `𝒜(D, M)`,
/// or of `𝒜₀(D, M)` when it is real on the real axis.
#[derive(Clone)]
pub struct AnalyticFunction<T> {
    eval: ComplexFn<T>,
    real_eval: Option<RealFn<T>>,
    domain: Arc<dyn NiceDomain<T>>,
    bound: T,
    real_on_real: bool,
    breakpoints: Vec<T>,
}

impl<T: Real> fmt::Debug for AnalyticFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("bound", &self.bound)
            .field("real_on_real", &self.real_on_real)
            .field("delta_sup", &self.domain.delta_sup())
            .finish()
    }
}

impl<T: Real> AnalyticFunction<T> {
    pub fn new<F>(eval: F, domain: Arc<dyn NiceDomain<T>>, bound: T, real_on_real: bool) -> Self
    where
        F: Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            real_eval: None,
            domain,
            bound,
            real_on_real,
            breakpoints: Vec::new(),
        }
    }

    /// An entire function, attached to a disk of radius 16 about the origin
    /// (large enough for every derivative radius used by the rules).
    pub fn entire<F>(eval: F, bound: T, real_on_real: bool) -> Self
    where
        F: Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
    {
        let disk = ScaledDiskMap::new(lit::<T>(16.0)).expect("radius exceeds one");
        Self::new(eval, Arc::new(disk), bound, real_on_real)
    }

    /// Supplies a dedicated evaluator on the real segment, used by the
    /// integrator in place of `Re eval(x)`.
    pub fn with_real_eval<F>(mut self, eval: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        self.real_eval = Some(Arc::new(eval));
        self
    }

    /// Points of `(-1, 1)` near which the function varies on a small scale;
    /// the integrator starts its panels there.
    pub fn with_breakpoints(mut self, points: Vec<T>) -> Self {
        self.breakpoints = points;
        self
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        (self.eval)(z)
    }

    pub fn eval_real(&self, x: T) -> T {
        match &self.real_eval {
            Some(g) => g(x),
            None => (self.eval)(Complex::new(x, T::zero())).re,
        }
    }

    pub fn bound(&self) -> T {
        self.bound
    }

    pub fn is_real_on_real(&self) -> bool {
        self.real_on_real
    }

    pub fn domain(&self) -> &Arc<dyn NiceDomain<T>> {
        &self.domain
    }

    pub fn delta_at(&self, x: T) -> Result<T> {
        self.domain.delta_at(x)
    }

    /// `M·f`, with the bound scaled accordingly.
    pub fn scaled(&self, factor: T) -> Self {
        let eval = Arc::clone(&self.eval);
        let real_eval = self.real_eval.clone();
        Self {
            eval: Arc::new(move |z| eval(z) * factor),
            real_eval: real_eval.map(|g| Arc::new(move |x| g(x) * factor) as RealFn<T>),
            domain: Arc::clone(&self.domain),
            bound: self.bound * factor.abs(),
            real_on_real: self.real_on_real,
            breakpoints: self.breakpoints.clone(),
        }
    }
}

/// Polynomial `Σ c_k z^k` as an entire function; its bound is attached to the
/// disk of radius 16 it is declared on.
pub fn polynomial_function<T: Real>(coeffs: Vec<T>) -> AnalyticFunction<T> {
    let r = lit::<T>(16.0);
    let bound = coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * r + c.abs());
    AnalyticFunction::entire(
        move |z| {
            coeffs
                .iter()
                .rev()
                .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
        },
        bound,
        true,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_keeps_shape() {
        let f = polynomial_function(vec![1.0, 2.0]);
        let g = f.scaled(-3.0);
        assert_eq!(g.eval_real(0.5), -6.0);
        assert_eq!(g.bound(), 3.0 * f.bound());
        let h = f.with_real_eval(|x| 10.0 * x).scaled(2.0);
        assert_eq!(h.eval_real(1.0), 20.0);
    }
}
