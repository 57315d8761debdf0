//! Hyperbolic geometry of the unit disk and its transport to nice domains.
//!
//! The Riemann map of the ellipse onto the disk is represented through its
//! *rapidity* `ζ(z) = artanh f_D(z)`. On the real segment `f_D` is extremely
//! close to `±1` for thin ellipses, and `tanh` of a rapidity difference is the
//! only numerically faithful way to form `m(f_D(x), f_D(y))` there.

use num_complex::Complex;

use crate::domains::{EllipseDomain, NiceDomain};
use crate::error::{domain, Error, Result};
use crate::scalar::{attainable, from_usize, lit, Real};

/// Möbius pseudodistance `|(w − z)/(1 − w̄z)|` on the unit disk.
pub fn mobius_m<T: Real>(w: Complex<T>, z: Complex<T>) -> Result<T> {
    if !(w.norm() < T::one()) || !(z.norm() < T::one()) {
        return domain(format!("points must lie in the open unit disk, got {w} and {z}"));
    }
    let den = Complex::new(T::one(), T::zero()) - w.conj() * z;
    Ok(((w - z) / den).norm())
}

/// Poincaré distance `artanh m(w, z)`.
pub fn poincare_p<T: Real>(w: Complex<T>, z: Complex<T>) -> Result<T> {
    let m = mobius_m(w, z)?;
    Ok(artanh(m))
}

pub(crate) fn artanh<T: Real>(m: T) -> T {
    let two = lit::<T>(2.0);
    lit::<T>(0.5) * (two * m / (T::one() - m)).ln_1p()
}

/// Lower bound `tanh(L·dist/δ_D)` for `c_D*` between two points of the
/// segment at distance `dist` (Koebe one-quarter theorem; `L = 1/2` for
/// convex domains).
pub fn cstar_koebe_lower<T: Real>(delta_d: T, koebe_l: T, dist: T) -> Result<T> {
    if !(delta_d > T::zero()) {
        return domain(format!("δ_D must be positive, got {delta_d}"));
    }
    if !(koebe_l > T::zero()) {
        return domain(format!("Koebe constant must be positive, got {koebe_l}"));
    }
    if !(dist >= T::zero()) {
        return domain(format!("distance must be nonnegative, got {dist}"));
    }
    Ok((koebe_l * dist / delta_d).tanh())
}

/// `tanh` for complex arguments with arbitrarily large real part.
pub fn tanh_stable<T: Real>(z: Complex<T>) -> Complex<T> {
    let two = lit::<T>(2.0);
    let a = z.re;
    let e = (-two * two * a.abs()).exp();
    let sech2a = two * (-two * a.abs()).exp() / (T::one() + e);
    let tanh2a = (two * a).tanh();
    let (s, c) = (two * z.im).sin_cos();
    Complex::new(tanh2a, s * sech2a) / (T::one() + c * sech2a)
}

/// `ln tanh(u)` for `u ≥ 0`, accurate for both tiny and huge `u`.
pub(crate) fn ln_tanh<T: Real>(u: T) -> T {
    if u < lit(0.5) {
        u.tanh().ln()
    } else {
        let e = (-lit::<T>(2.0) * u).exp();
        (-e).ln_1p() - e.ln_1p()
    }
}

/// Principal arcsine with real-arithmetic evaluation of both parts, so that
/// the imaginary part stays accurate for points close to the segment.
pub fn casin<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    let one = T::one();
    let x = z.re.abs();
    let y = z.im.abs();
    if y == T::zero() && x <= one {
        return Complex::new(z.re.asin(), z.im);
    }
    let r = (x + one).hypot(y);
    let s = (x - one).hypot(y);
    let big_a = half * (r + s);
    let big_b = x / big_a;
    let y2 = y * y;

    let re = if big_b <= lit(0.6417) {
        big_b.asin()
    } else if x <= one {
        let d = half * (big_a + x) * (y2 / (r + x + one) + (s + (one - x)));
        (x / d.sqrt()).atan()
    } else {
        let apx = big_a + x;
        let d = half * (apx / (r + x + one) + apx / (s + (x - one)));
        (x / (y * d.sqrt())).atan()
    };

    let im = if big_a <= lit(1.5) {
        let am1 = if x < one {
            half * (y2 / (r + x + one) + y2 / (s + (one - x)))
        } else {
            half * (y2 / (r + x + one) + (s + (x - one)))
        };
        (am1 + (am1 * (big_a + one)).sqrt()).ln_1p()
    } else {
        (big_a + (big_a * big_a - one).sqrt()).ln()
    };

    Complex::new(re.copysign(z.re), im.copysign(z.im))
}

/// A conformal map `f_D` of a nice domain onto the unit disk normalised by
/// `f_D(0) = 0` and `f_D([0, 1)) ⊂ [0, 1)`, exposed through its rapidity.
pub trait RiemannMap<T: Real>: NiceDomain<T> {
    /// `artanh f_D(z)`.
    fn rapidity(&self, z: Complex<T>) -> Result<Complex<T>>;

    /// `artanh f_D(x)` for real `x ∈ [-1, 1]`.
    fn real_rapidity(&self, x: T) -> Result<T> {
        Ok(self.rapidity(Complex::new(x, T::zero()))?.re)
    }

    /// Whether `z` lies in the closure of the domain.
    fn contains(&self, z: Complex<T>) -> bool;

    fn to_disk(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(tanh_stable(self.rapidity(z)?))
    }
}

/// Evaluates `f_D(z)`.
pub fn ellipse_to_disk<T: Real>(map: &ConformalMap<T>, z: Complex<T>) -> Result<Complex<T>> {
    map.to_disk(z)
}

/// `c_D*(w, z) = m(f_D(w), f_D(z))`.
///
/// For two real points the value is `tanh |ζ(w) − ζ(z)|`, which is exact even
/// when both images sit within rounding distance of the unit circle.
pub fn cstar<T: Real, M: RiemannMap<T> + ?Sized>(map: &M, w: Complex<T>, z: Complex<T>) -> Result<T> {
    if w.im == T::zero() && z.im == T::zero() {
        let a = map.real_rapidity(w.re)?;
        let b = map.real_rapidity(z.re)?;
        return Ok((a - b).abs().tanh());
    }
    mobius_m(map.to_disk(w)?, map.to_disk(z)?)
}

/// The disk `|z| < R` (`R > 1`) with `f_D(z) = z/R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledDiskMap<T> {
    radius: T,
}

impl<T: Real> ScaledDiskMap<T> {
    pub fn new(radius: T) -> Result<Self> {
        if !(radius > T::one()) {
            return domain(format!("disk radius must exceed 1, got {radius}"));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> T {
        self.radius
    }
}

impl<T: Real> NiceDomain<T> for ScaledDiskMap<T> {
    fn delta_at(&self, x: T) -> Result<T> {
        if !(x.abs() <= T::one()) {
            return domain(format!("point {x} is outside [-1, 1]"));
        }
        Ok(self.radius - x.abs())
    }

    fn delta_sup(&self) -> T {
        self.radius
    }

    fn is_convex(&self) -> bool {
        true
    }
}

impl<T: Real> RiemannMap<T> for ScaledDiskMap<T> {
    fn rapidity(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !self.contains(z) {
            return domain(format!("{z} lies outside the disk of radius {}", self.radius));
        }
        Ok((z / self.radius).atanh())
    }

    fn real_rapidity(&self, x: T) -> Result<T> {
        if !(x.abs() < self.radius) {
            return domain(format!("{x} lies outside the disk of radius {}", self.radius));
        }
        Ok(artanh(x / self.radius))
    }

    fn contains(&self, z: Complex<T>) -> bool {
        z.norm() < self.radius
    }
}

const BOUNDARY_SAMPLES: usize = 64;
const RESIDUAL_TARGET: f64 = 1e-8;

/// Riemann map of the ellipse `𝓔_c` onto the unit disk.
///
/// With `v = arcsin z` the ellipse becomes the rectangle
/// `|Re v| < π/2, |Im v| < t₀` (edges folded), and
/// `f_D(z) = √k · sn(2K v/π; k) = θ₁(v; q)/θ₄(v; q)` with nome
/// `q = e^{−4t₀}`. For `t₀ < π/4` the imaginary (modular) transformation is
/// used instead, whose nome `e^{−π²/4t₀}` is the smaller of the two.
///
/// `t₀` is calibrated at construction so that `|f_D| = 1` on boundary samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConformalMap<T> {
    domain: EllipseDomain<T>,
    half_height: T,
    boundary_residual: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Regime {
    Direct,
    Transformed,
}

impl<T: Real> ConformalMap<T> {
    pub fn new(domain: EllipseDomain<T>) -> Result<Self> {
        let mut map = Self {
            domain,
            half_height: domain.c().ln(),
            boundary_residual: T::zero(),
        };
        map.calibrate()?;
        Ok(map)
    }

    pub fn for_ellipse(c: T) -> Result<Self> {
        Self::new(EllipseDomain::new(c)?)
    }

    pub fn domain(&self) -> &EllipseDomain<T> {
        &self.domain
    }

    /// Elliptic nome `q = e^{−4t₀}` of the calibrated map.
    pub fn nome(&self) -> T {
        (-lit::<T>(4.0) * self.half_height).exp()
    }

    /// Largest `||f_D| − 1|` over the boundary samples used for calibration.
    pub fn boundary_residual(&self) -> T {
        self.boundary_residual
    }

    fn regime(&self) -> Regime {
        if self.half_height >= T::FRAC_PI_4() {
            Regime::Direct
        } else {
            Regime::Transformed
        }
    }

    fn boundary_stats(&self) -> Result<(T, T)> {
        let mut mean_log = T::zero();
        let mut max_dev = T::zero();
        for k in 0..BOUNDARY_SAMPLES {
            let phi = T::TAU() * (from_usize::<T>(k) + lit(0.5)) / from_usize(BOUNDARY_SAMPLES);
            let (x, y) = self.domain.boundary_point(phi);
            let w = tanh_stable(self.rapidity_unchecked(Complex::new(x, y)));
            let r = w.norm();
            mean_log = mean_log + r.ln();
            max_dev = max_dev.max((r - T::one()).abs());
        }
        Ok((mean_log / from_usize(BOUNDARY_SAMPLES), max_dev))
    }

    /// Secant iteration on `t₀` for the mean of `ln |f_D|` over the boundary
    /// samples, started from the classical value `t₀ = ln c`.
    fn calibrate(&mut self) -> Result<()> {
        let target = attainable(lit::<T>(RESIDUAL_TARGET));
        let (mut g0, dev) = self.boundary_stats()?;
        self.boundary_residual = dev;
        if dev < target {
            return Ok(());
        }
        let mut t0 = self.half_height;
        let mut t1 = t0 * (T::one() + lit(1e-6));
        for _ in 0..60 {
            self.half_height = t1;
            let (g1, dev) = self.boundary_stats()?;
            self.boundary_residual = dev;
            if dev < target {
                return Ok(());
            }
            if g1 == g0 {
                break;
            }
            let next = t1 - g1 * (t1 - t0) / (g1 - g0);
            if !(next > T::zero()) || !next.is_finite() {
                break;
            }
            t0 = t1;
            g0 = g1;
            t1 = next;
        }
        if self.boundary_residual < target * lit(1e3) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "conformal map calibration stalled at residual {}",
                self.boundary_residual
            )))
        }
    }

    fn rapidity_unchecked(&self, z: Complex<T>) -> Complex<T> {
        self.rapidity_of_strip(casin(z))
    }

    fn rapidity_of_strip(&self, v: Complex<T>) -> Complex<T> {
        match self.regime() {
            Regime::Direct => theta_ratio(v, self.nome()).atanh(),
            Regime::Transformed => transformed_rapidity(v, self.half_height),
        }
    }
}

/// `θ₁(v; q) / θ₄(v; q)`.
fn theta_ratio<T: Real>(v: Complex<T>, q: T) -> Complex<T> {
    let two = lit::<T>(2.0);
    let tiny = T::epsilon() * lit(1e-3);
    let mut num = Complex::new(T::zero(), T::zero());
    let mut den = Complex::new(T::one(), T::zero());
    let mut sign = T::one();
    for n in 0..512usize {
        let nf = from_usize::<T>(n);
        let half = nf + lit(0.5);
        let w1 = q.powf(half * half);
        num = num + (Complex::new(two * nf + T::one(), T::zero()) * v).sin() * (two * sign * w1);
        if n >= 1 {
            let w4 = q.powf(nf * nf);
            den = den + (Complex::new(two * nf, T::zero()) * v).cos() * (two * sign * w4);
            if w4 * (two * nf * v.im.abs()).exp() < tiny && w1 * ((two * nf + T::one()) * v.im.abs()).exp() < tiny {
                break;
            }
        }
        sign = -sign;
    }
    num / den
}

/// Rapidity after the imaginary transformation:
/// `ζ = y + ½[ln(1 + R(y)) − ln(1 + R(−y))]`, `y = πv/(4t₀)`,
/// `R(y) = Σ_{n≥1} p^{n²+n} e^{((−1)ⁿ(2n+1) − 1) y}`, `p = e^{−π²/(4t₀)}`.
fn transformed_rapidity<T: Real>(v: Complex<T>, t0: T) -> Complex<T> {
    let pi = T::PI();
    let beta = pi * pi / (lit::<T>(4.0) * t0);
    let y = v * (pi / (lit::<T>(4.0) * t0));
    let tail = |y: Complex<T>| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for n in 1..64usize {
            let nf = from_usize::<T>(n);
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            let slope = sign * (lit::<T>(2.0) * nf + T::one()) - T::one();
            let log_mag = -beta * (nf * nf + nf) + slope * y.re;
            if log_mag < lit(-745.0) && n > 2 {
                break;
            }
            let expo = Complex::new(-beta * (nf * nf + nf), T::zero()) + y * slope;
            acc = acc + expo.exp();
        }
        acc
    };
    let one = Complex::new(T::one(), T::zero());
    let plus = (one + tail(y)).ln();
    let minus = (one + tail(-y)).ln();
    y + (plus - minus) * lit::<T>(0.5)
}

impl<T: Real> NiceDomain<T> for ConformalMap<T> {
    fn delta_at(&self, x: T) -> Result<T> {
        self.domain.delta_at(x)
    }

    fn delta_sup(&self) -> T {
        self.domain.delta_sup()
    }

    fn is_convex(&self) -> bool {
        true
    }
}

impl<T: Real> RiemannMap<T> for ConformalMap<T> {
    fn rapidity(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !self.contains(z) {
            return domain(format!("{z} lies outside the ellipse c = {}", self.domain.c()));
        }
        Ok(self.rapidity_unchecked(z))
    }

    fn real_rapidity(&self, x: T) -> Result<T> {
        if !(x.abs() <= T::one()) {
            return domain(format!("point {x} is outside [-1, 1]"));
        }
        let v = Complex::new(x.asin(), T::zero());
        Ok(match self.regime() {
            Regime::Direct => artanh(theta_ratio(v, self.nome()).re.abs()).copysign(x),
            Regime::Transformed => transformed_rapidity(v, self.half_height).re,
        })
    }

    fn contains(&self, z: Complex<T>) -> bool {
        self.domain.level(z.re, z.im) < T::one() + lit(1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn mobius_examples() {
        assert_relative_eq!(mobius_m(c(0.0, 0.0), c(0.5, 0.0)).unwrap(), 0.5);
        assert_eq!(mobius_m(c(0.5, 0.0), c(0.5, 0.0)).unwrap(), 0.0);
        assert_relative_eq!(mobius_m(c(0.5, 0.0), c(-0.5, 0.0)).unwrap(), 0.8, max_relative = 1e-15);
        assert!(mobius_m(c(1.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(mobius_m(c(0.0, 0.0), c(0.8, 0.8)).is_err());
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_p(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        assert_relative_eq!(poincare_p(c(0.0, 0.0), c(0.5, 0.0)).unwrap(), 0.549_306_144_334_054_8, max_relative = 1e-14);
        let (w, z) = (c(0.3, -0.2), c(-0.1, 0.6));
        assert_relative_eq!(poincare_p(w, z).unwrap(), poincare_p(z, w).unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn poincare_additive_along_diameter() {
        for i in 1..20 {
            let t = i as f64 / 20.0;
            let whole = poincare_p(c(-t, 0.0), c(t, 0.0)).unwrap();
            let parts = poincare_p(c(-t, 0.0), c(0.0, 0.0)).unwrap() + poincare_p(c(0.0, 0.0), c(t, 0.0)).unwrap();
            assert_relative_eq!(whole, parts, max_relative = 1e-12);
        }
    }

    #[test]
    fn mobius_invariant_under_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut disk = || loop {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if z.norm() < 0.95 {
                return z;
            }
        };
        for _ in 0..100 {
            let (eta, w, z) = (disk(), disk(), disk());
            let phi = |u: Complex<f64>| (eta - u) / (c(1.0, 0.0) - eta.conj() * u);
            let before = mobius_m(w, z).unwrap();
            let after = mobius_m(phi(w), phi(z)).unwrap();
            assert!((before - after).abs() < 1e-12, "{before} vs {after}");
        }
    }

    #[test]
    fn koebe_lower_examples() {
        assert_relative_eq!(cstar_koebe_lower(0.75, 0.5, 1.0).unwrap(), 0.582_782_945_347_910_1, max_relative = 1e-12);
        assert_eq!(cstar_koebe_lower(0.3, 0.25, 0.0).unwrap(), 0.0);
        assert!(cstar_koebe_lower(1e-12, 0.5, 1.0).unwrap() > 1.0 - 1e-12);
        assert!(cstar_koebe_lower(0.0, 0.5, 1.0).is_err());
        assert!(cstar_koebe_lower(-1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn casin_matches_library_branch() {
        let pts = [c(0.3, 0.2), c(-0.9, 0.05), c(1.2, -0.3), c(-1.4, 0.0001), c(0.0, 2.0), c(0.999, -1e-9), c(3.0, 4.0)];
        for z in pts {
            let ours = casin(z);
            let lib = z.asin();
            assert!((ours - lib).norm() < 1e-12 * (1.0 + lib.norm()), "{z}: {ours} vs {lib}");
            assert!((ours.sin() - z).norm() < 1e-12 * (1.0 + z.norm()));
        }
    }

    #[test]
    fn tanh_stable_large_arguments() {
        let z = c(800.0, 0.3);
        let t = tanh_stable(z);
        assert!((t - c(1.0, 0.0)).norm() < 1e-15);
        let z = c(0.4, -0.7);
        assert!((tanh_stable(z) - z.tanh()).norm() < 1e-14);
    }

    #[test]
    fn ln_tanh_branches_agree() {
        for &u in &[1e-8f64, 0.1, 0.49, 0.5, 0.51, 3.0] {
            assert_relative_eq!(ln_tanh(u), u.tanh().ln(), max_relative = 1e-12);
        }
        // tanh rounds to 1 here; the leading term is −2e^{−2u}
        assert_relative_eq!(ln_tanh(40.0f64), -2.0 * (-80.0f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn calibration_residuals() {
        for &cc in &[1.05f64, 1.2, 1.5, 2.0, 4.0] {
            let map = ConformalMap::for_ellipse(cc).unwrap();
            assert!(map.boundary_residual() < 1e-8, "c={cc}: {}", map.boundary_residual());
            assert_relative_eq!(map.nome(), cc.powi(-4), max_relative = 1e-6);
        }
    }

    #[test]
    fn map_normalisation_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &cc in &[1.05, 1.5, 3.0] {
            let map = ConformalMap::for_ellipse(cc).unwrap();
            assert!(ellipse_to_disk(&map, c(0.0, 0.0)).unwrap().norm() < 1e-12);
            let (a, b) = (map.domain().major(), map.domain().minor());
            for _ in 0..100 {
                let (x, y) = (rng.gen_range(-a..a), rng.gen_range(-b..b));
                let z = c(x, y);
                if !map.contains(z) {
                    continue;
                }
                let fz = ellipse_to_disk(&map, z).unwrap();
                let fc = ellipse_to_disk(&map, z.conj()).unwrap();
                assert!((fz.conj() - fc).norm() < 1e-12);
                assert!(fz.norm() < 1.0 + 1e-12);
            }
            let mut prev = -1.0;
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let fx = ellipse_to_disk(&map, c(x, 0.0)).unwrap();
                assert!(fx.im.abs() < 1e-14);
                // f_D(1) is within 1e-21 of 1 for c = 1.05; only the rapidity resolves it
                assert!(fx.re >= 0.0 && fx.re <= 1.0);
                let r = map.real_rapidity(x).unwrap();
                assert!(r.is_finite());
                assert!(r > prev || (i == 0 && r == 0.0), "c={cc} x={x}");
                prev = r;
            }
        }
    }

    #[test]
    fn regimes_agree_near_switch() {
        // t0 = π/4 separates the two series; both must give the same map.
        let cc = (std::f64::consts::FRAC_PI_4).exp();
        let below = ConformalMap::for_ellipse(cc * (1.0 - 1e-12)).unwrap();
        let above = ConformalMap::for_ellipse(cc * (1.0 + 1e-12)).unwrap();
        assert_ne!(below.regime(), above.regime());
        for &z in &[c(0.3, 0.1), c(-0.8, 0.4), c(0.95, 0.0), c(0.0, 0.8)] {
            let d = (below.to_disk(z).unwrap() - above.to_disk(z).unwrap()).norm();
            assert!(d < 1e-10, "{z}: {d}");
        }
    }

    #[test]
    fn rejects_points_outside() {
        let map = ConformalMap::for_ellipse(2.0).unwrap();
        assert!(ellipse_to_disk(&map, c(1.3, 0.0)).is_err());
        assert!(ellipse_to_disk(&map, c(0.0, 0.8)).is_err());
        assert!(map.real_rapidity(1.01).is_err());
    }

    #[test]
    fn cstar_examples() {
        let map = ConformalMap::for_ellipse(2.0).unwrap();
        assert_eq!(cstar(&map, c(0.3, 0.0), c(0.3, 0.0)).unwrap(), 0.0);
        let f = ellipse_to_disk(&map, c(0.5, 0.0)).unwrap().norm();
        assert_relative_eq!(cstar(&map, c(0.0, 0.0), c(0.5, 0.0)).unwrap(), f, max_relative = 1e-13);
        let lhs = cstar(&map, c(-0.5, 0.0), c(0.5, 0.0)).unwrap();
        assert!(lhs >= cstar_koebe_lower(0.75, 0.5, 1.0).unwrap());
        // complex route agrees with the rapidity route on real pairs
        let via_disk = mobius_m(map.to_disk(c(-0.5, 0.0)).unwrap(), map.to_disk(c(0.5, 0.0)).unwrap()).unwrap();
        assert_relative_eq!(lhs, via_disk, max_relative = 1e-12);
    }

    #[test]
    fn disk_map_is_scaling() {
        let map = ScaledDiskMap::new(2.0).unwrap();
        assert!((map.to_disk(c(0.6, -0.4)).unwrap() - c(0.3, -0.2)).norm() < 1e-15);
        assert!(ScaledDiskMap::new(1.0).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let map = ConformalMap::<f32>::for_ellipse(2.0).unwrap();
        let w = map.to_disk(Complex::new(0.5f32, 0.0)).unwrap();
        let reference = ConformalMap::<f64>::for_ellipse(2.0).unwrap().to_disk(Complex::new(0.5, 0.0)).unwrap();
        assert!((w.re as f64 - reference.re).abs() < 1e-5, "{w}");
    }
}
