//! Reference integrator: globally adaptive bisection with a 7/15-point
//! Gauss–Kronrod pair on every panel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::{attainable, lit, to_f64, Real};

use super::function::AnalyticFunction;
use super::weight::{Endpoint, WeightKind, WeightMeasure};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod abscissae (indices 1, 3, 5) and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_PANELS: usize = 20_000;

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error_estimate: T,
    pub panels: usize,
}

#[derive(Clone, Copy, Debug)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    // Largest error first; ties broken by position for a deterministic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn gauss_kronrod<T: Real, F: Fn(T) -> T>(g: &F, a: T, b: T) -> Panel<T> {
    let half = lit::<T>(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = g(center);
    let mut kronrod = f_center * lit(WGK[7]);
    let mut gauss = f_center * lit(WG[3]);
    let mut abs_sum = f_center.abs() * lit(WGK[7]);
    let mut values = [(T::zero(), T::zero()); 7];
    for (j, v) in values.iter_mut().enumerate() {
        let dx = half_len * lit(XGK[j]);
        let (f1, f2) = (g(center - dx), g(center + dx));
        *v = (f1, f2);
        kronrod = kronrod + lit::<T>(WGK[j]) * (f1 + f2);
        abs_sum = abs_sum + lit::<T>(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + lit::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = kronrod * half;
    let mut asc = (f_center - mean).abs() * lit(WGK[7]);
    for (j, &(f1, f2)) in values.iter().enumerate() {
        asc = asc + lit::<T>(WGK[j]) * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let scale = half_len.abs();
    let err = rescale_error((kronrod - gauss).abs() * scale, abs_sum * scale, asc * scale);
    Panel {
        a,
        b,
        value: kronrod * half_len,
        error: err,
    }
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut scaled = err;
    if res_asc != T::zero() && scaled != T::zero() {
        let ratio = (lit::<T>(200.0) * scaled / res_asc).powf(lit(1.5));
        scaled = if ratio < T::one() { res_asc * ratio } else { res_asc };
    }
    let floor = lit::<T>(50.0) * T::epsilon() * res_abs;
    scaled.max(floor)
}

/// Integrates `g` over `[a, b]` to absolute accuracy `tol`.
pub fn adaptive<T: Real, F: Fn(T) -> T>(g: F, a: T, b: T, tol: T) -> Result<Integral<T>> {
    adaptive_with_breaks(g, &[a, b], tol)
}

/// Integrates `g` over `[points[0], points[last]]`, starting from one panel
/// per consecutive pair of (ascending) points. Breakpoints at features much
/// narrower than the interval keep them from being missed.
pub fn adaptive_with_breaks<T: Real, F: Fn(T) -> T>(g: F, points: &[T], tol: T) -> Result<Integral<T>> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("breakpoints must be ascending with at least two entries".into()));
    }
    let tol = attainable(tol);
    let (a, b) = (points[0], points[points.len() - 1]);
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        heap.push(gauss_kronrod(&g, w[0], w[1]));
    }
    let mut total = heap.iter().fold(T::zero(), |s, p| s + p.value);
    let mut total_err = heap.iter().fold(T::zero(), |s, p| s + p.error);
    let min_width = (b - a).abs() * T::epsilon() * lit(256.0);
    let mut frozen_err = T::zero();
    while total_err + frozen_err > tol {
        if heap.len() >= MAX_PANELS {
            return Err(Error::Integration {
                estimate: to_f64(total),
                error_estimate: to_f64(total_err + frozen_err),
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = lit::<T>(0.5) * (worst.a + worst.b);
        if (worst.b - worst.a).abs() < min_width {
            // Cannot be resolved further; keep its contribution.
            frozen_err = frozen_err + worst.error;
            total_err = total_err - worst.error;
            if heap.is_empty() {
                break;
            }
            heap.push(Panel {
                error: T::zero(),
                ..worst
            });
            continue;
        }
        let left = gauss_kronrod(&g, worst.a, mid);
        let right = gauss_kronrod(&g, mid, worst.b);
        total = total - worst.value + left.value + right.value;
        total_err = total_err - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        // Re-sum periodically to avoid drift of the running totals.
        if heap.len() % 64 == 0 {
            total = heap.iter().fold(T::zero(), |s, p| s + p.value);
            total_err = heap.iter().fold(T::zero(), |s, p| s + p.error);
        }
    }
    let value = heap.iter().fold(T::zero(), |s, p| s + p.value);
    let error_estimate = heap.iter().fold(T::zero(), |s, p| s + p.error) + frozen_err;
    if error_estimate > tol {
        return Err(Error::Integration {
            estimate: to_f64(value),
            error_estimate: to_f64(error_estimate),
        });
    }
    Ok(Integral {
        value,
        error_estimate,
        panels: heap.len(),
    })
}

/// `∫ g dα` for a real integrand `g` on `[-1, 1]`.
///
/// The Chebyshev weight (and custom weights flagged with endpoint
/// singularities) are integrated in `θ = arccos x`, which turns the weight into
/// a bounded factor.
pub fn integrate_real<T: Real, F: Fn(T) -> T>(g: F, weight: &WeightMeasure<T>, tol: T) -> Result<Integral<T>> {
    integrate_real_with_breaks(g, weight, &[], tol)
}

/// [`integrate_real`] with extra breakpoints in `(-1, 1)`; points outside
/// the open interval are ignored.
pub fn integrate_real_with_breaks<T: Real, F: Fn(T) -> T>(
    g: F,
    weight: &WeightMeasure<T>,
    breaks: &[T],
    tol: T,
) -> Result<Integral<T>> {
    let mut xs: Vec<T> = breaks.iter().copied().filter(|x| x.abs() < T::one()).collect();
    xs.push(-T::one());
    xs.push(T::one());
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    xs.dedup();
    let in_theta = weight.kind() == WeightKind::Chebyshev
        || (weight.kind() == WeightKind::Custom && weight.endpoint() == Endpoint::IntegrableSingularity);
    if !in_theta {
        return match weight.kind() {
            WeightKind::Lebesgue => adaptive_with_breaks(g, &xs, tol),
            _ => adaptive_with_breaks(|x: T| g(x) * weight.density(x), &xs, tol),
        };
    }
    let mut thetas: Vec<T> = xs.iter().rev().map(|x| x.acos()).collect();
    thetas[0] = T::zero();
    *thetas.last_mut().expect("two points") = T::PI();
    thetas.dedup();
    if weight.kind() == WeightKind::Chebyshev {
        adaptive_with_breaks(|t: T| g(t.cos()), &thetas, tol)
    } else {
        adaptive_with_breaks(
            |t: T| {
                let x = t.cos();
                g(x) * weight.density(x) * t.sin()
            },
            &thetas,
            tol,
        )
    }
}

/// `I(f, α) = ∫ f dα` for a function real on the real axis.
pub fn integrate<T: Real>(f: &AnalyticFunction<T>, weight: &WeightMeasure<T>, tol: T) -> Result<Integral<T>> {
    if !f.is_real_on_real() {
        return Err(Error::Domain("integrand must be real on the real axis".into()));
    }
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    integrate_real_with_breaks(|x| f.eval_real(x), weight, f.breakpoints(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::polynomial_function;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_pair_is_exact_on_polynomials() {
        // G7 is exact to degree 13, K15 to degree 22.
        for m in 0..=22 {
            let exact = if m % 2 == 0 { 2.0 / (m as f64 + 1.0) } else { 0.0 };
            let p = gauss_kronrod(&|x: f64| x.powi(m), -1.0, 1.0);
            assert_abs_diff_eq!(p.value, exact, epsilon = 1e-15);
            let mut g = 0.0;
            for (j, w) in WG.iter().enumerate().take(3) {
                let x = XGK[2 * j + 1];
                g += w * (x.powi(m) + (-x).powi(m));
            }
            g += WG[3] * if m == 0 { 1.0 } else { 0.0 };
            if m <= 13 {
                assert_abs_diff_eq!(g, exact, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn weighted_examples() {
        let leb = WeightMeasure::<f64>::lebesgue();
        let cheb = WeightMeasure::<f64>::chebyshev();
        let sq = polynomial_function(vec![0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(integrate(&sq, &leb, 1e-12).unwrap().value, 2.0 / 3.0, epsilon = 1e-12);
        let one = polynomial_function(vec![1.0]);
        assert_abs_diff_eq!(integrate(&one, &cheb, 1e-12).unwrap().value, PI, epsilon = 1e-12);
        let t4 = polynomial_function(vec![1.0, 0.0, -8.0, 0.0, 8.0]);
        assert_abs_diff_eq!(integrate(&t4, &cheb, 1e-12).unwrap().value, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn endpoint_singularity_custom_weight() {
        let w = WeightMeasure::custom(|x: f64| 1.0 / (1.0 - x * x).sqrt(), Endpoint::IntegrableSingularity, true).unwrap();
        assert_abs_diff_eq!(w.total_mass(), PI, epsilon = 1e-10);
        let r = integrate_real(|x: f64| x * x, &w, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, PI / 2.0, epsilon = 1e-11);
    }

    #[test]
    fn sharp_peak_refines() {
        let r = adaptive(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert_abs_diff_eq!(r.value, exact, epsilon = 1e-8);
        assert!(r.panels > 4);
    }

    #[test]
    fn reports_nonconvergence() {
        let err = adaptive(|x: f64| (1.0 / x.abs().max(1e-300)).sin() / x.abs().sqrt().max(1e-160), -1.0, 1.0, 1e-14);
        match err {
            Err(Error::Integration { .. }) => {}
            other => panic!("expected integration failure, got {other:?}"),
        }
    }

    #[test]
    fn rejects_complex_integrand() {
        let f = AnalyticFunction::entire(|z| z * num_complex::Complex::new(0.0, 1.0), 1.0, false);
        assert!(integrate(&f, &WeightMeasure::lebesgue(), 1e-10).is_err());
    }
}
