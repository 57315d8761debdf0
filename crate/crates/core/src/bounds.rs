//! Closed-form lower and upper bounds for worst-case quadrature errors on
//! ellipses, and the node-count estimates derived from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::domains::{ellipse_params, EllipseDomain};
use crate::error::{domain, Error, Result};
use crate::quadrature::{omega_modulus, orthonormal_polys, AnalyticFunction, Endpoint, WeightKind, WeightMeasure};
use crate::scalar::{from_usize, lit, to_f64, Real};

fn check_c<T: Real>(c: T) -> Result<()> {
    if !(c > T::one()) || !c.is_finite() {
        return domain(format!("ellipse parameter c must exceed 1, got {c}"));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return domain("the number of nodes must be at least 1");
    }
    Ok(())
}

/// `c^{-2n}` without forming `c^{2n}`.
fn inv_pow2n<T: Real>(c: T, n: usize) -> T {
    (-lit::<T>(2.0) * from_usize::<T>(n) * c.ln()).exp()
}

/// `ln ρ` with `ρ^{−2N}` the convex bound: `ρ = (1 + 1/(2δ))^{2δ}(2δ + 1)`.
fn ln_gamma_base<T: Real>(delta: T) -> T {
    let two_d = lit::<T>(2.0) * delta;
    two_d * two_d.recip().ln_1p() + two_d.ln_1p()
}

/// `ln` of `L^{2N} δ^{2Nδ/L} (δ + L)^{−(2N/L)(δ + L)}`.
fn ln_general<T: Real>(delta: T, koebe_l: T, n: usize) -> T {
    let two_n = lit::<T>(2.0) * from_usize::<T>(n);
    two_n * koebe_l.ln() + two_n * delta / koebe_l * delta.ln() - two_n / koebe_l * (delta + koebe_l) * (delta + koebe_l).ln()
}

/// Guaranteed worst-case error `γ` for rules using `N` pieces of information
/// on a domain with `δ_D = delta`. The convex case is
/// `((1 + 1/(2δ))^{2δ}(2δ + 1))^{−2N}`; otherwise the Koebe constant `1/4`
/// replaces `1/2`.
pub fn new_lower_gamma<T: Real>(delta: T, n: usize, convex: bool) -> Result<T> {
    new_lower_gamma_scaled(delta, n, convex, T::one())
}

/// `γ` with its logarithm multiplied by `scale`; `scale ≠ 1` deliberately
/// breaks the formula and exists only for mutation testing of the
/// verification suite.
pub fn new_lower_gamma_scaled<T: Real>(delta: T, n: usize, convex: bool, scale: T) -> Result<T> {
    if !(delta > T::zero()) || !delta.is_finite() {
        return domain(format!("δ_D must be positive, got {delta}"));
    }
    check_n(n)?;
    let ln = if convex {
        -lit::<T>(2.0) * from_usize::<T>(n) * ln_gamma_base(delta)
    } else {
        ln_general(delta, lit(0.25), n)
    };
    Ok((ln * scale).exp())
}

/// Lower bound `2 L^{2N} δ^{2Nδ/L} / (δ + L)^{(2N/L)(δ + L)}` for `J₊(D; N)`
/// with Lebesgue measure.
pub fn new_lower_general<T: Real>(delta: T, koebe_l: T, n: usize) -> Result<T> {
    if !(delta > T::zero()) || !delta.is_finite() {
        return domain(format!("δ_D must be positive, got {delta}"));
    }
    if !(koebe_l > T::zero() && koebe_l <= lit(0.5)) {
        return domain(format!("Koebe constant must lie in (0, 1/2], got {koebe_l}"));
    }
    check_n(n)?;
    Ok(lit::<T>(2.0) * ln_general(delta, koebe_l, n).exp())
}

const MEASURE_GRID: usize = 64;

/// `sup_ε tanh(Lε/δ)^{2N} (α([-1,1]) − ω(2Nε, α))` over a logarithmic grid
/// of `ε ∈ [1e-6 δ, 1/N]`, refined by golden-section search around the best
/// grid point.
pub fn new_lower_measure<T: Real>(w: &WeightMeasure<T>, delta: T, koebe_l: T, n: usize) -> Result<T> {
    if !(delta > T::zero()) || !delta.is_finite() {
        return domain(format!("δ_D must be positive, got {delta}"));
    }
    if !(koebe_l > T::zero()) {
        return domain(format!("Koebe constant must be positive, got {koebe_l}"));
    }
    check_n(n)?;
    let two_n = lit::<T>(2.0) * from_usize::<T>(n);
    let objective = |ln_eps: T| -> Result<T> {
        let eps = ln_eps.exp();
        let mass = w.total_mass() - omega_modulus(w, (two_n * eps).min(lit(2.0)))?;
        Ok((koebe_l * eps / delta).tanh().powf(two_n) * mass.max(T::zero()))
    };
    let lo = (lit::<T>(1e-6) * delta).ln();
    let hi = from_usize::<T>(n).recip().ln();
    if !(lo < hi) {
        return objective(hi);
    }
    let step = (hi - lo) / from_usize(MEASURE_GRID - 1);
    let mut best = (T::zero(), 0);
    for i in 0..MEASURE_GRID {
        let v = objective(lo + step * from_usize(i))?;
        if v > best.0 {
            best = (v, i);
        }
    }
    let (mut a, mut b) = (
        lo + step * from_usize(best.1.saturating_sub(1)),
        lo + step * from_usize((best.1 + 1).min(MEASURE_GRID - 1)),
    );
    let ratio = lit::<T>(0.618_033_988_749_894_9);
    for _ in 0..60 {
        let m1 = b - ratio * (b - a);
        let m2 = a + ratio * (b - a);
        if objective(m1)? < objective(m2)? {
            a = m1;
        } else {
            b = m2;
        }
    }
    Ok(best.0.max(objective(lit::<T>(0.5) * (a + b))?))
}

/// Lower bound `2ρ^{−2N}` for `J₊(𝓔_c; N)` with Lebesgue measure, where
/// `ρ = ((c² − 1 + c)/(c² − 1))^{(c² − 1)/c} · (c² − 1 + c)/c`.
pub fn new_lower_ellipse<T: Real>(c: T, n: usize) -> Result<T> {
    check_c(c)?;
    check_n(n)?;
    Ok(lit::<T>(2.0) * (-lit::<T>(2.0) * from_usize::<T>(n) * ln_ellipse_base(c)).exp())
}

/// `ln ρ` of [`new_lower_ellipse`], stable as `c → 1`.
fn ln_ellipse_base<T: Real>(c: T) -> T {
    let s = (c - T::one()) * (c + T::one());
    s / c * (c / s).ln_1p() + (s / c).ln_1p()
}

/// Weight data for Bakhvalov's constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KappaWeight<T> {
    /// `m = 2`, `P₀ = 1`.
    Lebesgue,
    /// `m = 0`, `P₀ = 1`.
    Chebyshev,
    Custom { m: u32, p0: T },
}

/// `κ₀ = π P₀ (1 − c⁻¹) c^{−2m} ((c − c⁻¹)/2)^m`, so that
/// `ρ_n ≥ κ₀ c^{−2n}`.
pub fn bakhvalov_kappa0<T: Real>(c: T, weight: KappaWeight<T>) -> Result<T> {
    check_c(c)?;
    let (m, p0) = match weight {
        KappaWeight::Lebesgue => (2, T::one()),
        KappaWeight::Chebyshev => (0, T::one()),
        KappaWeight::Custom { m, p0 } => {
            if !(p0 > T::zero()) || !p0.is_finite() {
                return domain(format!("P₀ must be positive, got {p0}"));
            }
            (m as i32, p0)
        }
    };
    let sinh_h = (c - c.recip()) * lit(0.5);
    Ok(T::PI() * p0 * (T::one() - c.recip()) * c.powi(-2 * m) * sinh_h.powi(m))
}

const BOUNDARY_SAMPLES: usize = 512;

/// `k_n = (Σ_{ν ≤ n} (sup_{𝓔_c} |p_ν|)²)⁻¹` with `p_ν` orthonormal for the
/// weight. Suprema are taken over 512 boundary points of the ellipse, each
/// refined by golden-section search around the best sample.
pub fn petras_kn<T: Real>(w: &WeightMeasure<T>, c: T, n: usize) -> Result<T> {
    check_c(c)?;
    let (a, b) = ellipse_params(c)?;
    let polys = orthonormal_polys(w, n)?;
    let point = |phi: T| Complex::new(a * phi.cos(), b * phi.sin());
    let step = T::TAU() / from_usize(BOUNDARY_SAMPLES);
    let samples: Vec<Vec<T>> = (0..BOUNDARY_SAMPLES)
        .map(|i| polys.eval_all(point(step * from_usize(i))).iter().map(|p| p.norm()).collect())
        .collect();
    let mut total = T::zero();
    for nu in 0..=n {
        let (i_best, mut sup) = samples
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v[nu]))
            .fold((0, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
        let abs_at = |phi: T| polys.eval_all(point(phi))[nu].norm();
        let (mut lo, mut hi) = (step * from_usize(i_best) - step, step * from_usize(i_best) + step);
        let ratio = lit::<T>(0.618_033_988_749_894_9);
        for _ in 0..40 {
            let m1 = hi - ratio * (hi - lo);
            let m2 = lo + ratio * (hi - lo);
            if abs_at(m1) < abs_at(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        sup = sup.max(abs_at(lit::<T>(0.5) * (lo + hi)));
        total = total + sup * sup;
    }
    Ok(total.recip())
}

const SZEGO_SAMPLES: usize = 4096;
const SZEGO_POINTS: usize = 256;

/// `2π(1 − c⁻²) min_{|z| = c} |D(z⁻¹)|²`, the limit of `c^{2n} k_n`, where
/// `D` is the Szegő function of `w(cos t)|sin t|`.
///
/// For Chebyshev `D ≡ 1`. Otherwise `D` is evaluated by the trapezoid rule on
/// its Herglotz integral; for weights that are regular at `±1` the factor
/// `√((1 − z²)/2)` belonging to `|sin t|` is split off first so that the
/// remaining integrand `ln w(cos t)` is smooth.
pub fn szego_limit<T: Real>(w: &WeightMeasure<T>, c: T) -> Result<T> {
    check_c(c)?;
    if !w.is_szego_class() {
        return domain("weight is not in the Szegő class");
    }
    let prefactor = T::TAU() * (T::one() - c.powi(-2));
    if w.kind() == WeightKind::Chebyshev {
        return Ok(prefactor);
    }
    let regular = w.endpoint() == Endpoint::Regular;
    let h = T::TAU() / from_usize(SZEGO_SAMPLES);
    let nodes: Vec<(Complex<T>, T)> = (0..SZEGO_SAMPLES)
        .map(|j| {
            let t = h * (from_usize::<T>(j) + lit(0.5));
            let u = if regular {
                w.density(t.cos()).ln()
            } else {
                (w.density(t.cos()) * t.sin().abs()).ln()
            };
            (Complex::new(t.cos(), -t.sin()), u)
        })
        .collect();
    let mut min_sq = T::infinity();
    for k in 0..SZEGO_POINTS {
        let phi = T::TAU() * from_usize(k) / from_usize(SZEGO_POINTS);
        let zeta = Complex::from_polar(c.recip(), phi);
        let herglotz = nodes.iter().fold(Complex::new(T::zero(), T::zero()), |s, &(e, u)| {
            s + (Complex::new(T::one(), T::zero()) + zeta * e) / (Complex::new(T::one(), T::zero()) - zeta * e) * u
        }) * (h / (lit::<T>(2.0) * T::TAU()));
        let mut d_sq = (lit::<T>(2.0) * herglotz.re).exp();
        if regular {
            d_sq = d_sq * (Complex::new(T::one(), T::zero()) - zeta * zeta).norm() * lit(0.5);
        }
        min_sq = min_sq.min(d_sq);
    }
    Ok(prefactor * min_sq)
}

/// Explicit lower bounds for `ρ_n(𝒜(𝓔_c), dα)` due to Petras.
///
/// Lebesgue: `π(1 − c⁻²)² c^{−2n} / (1 + ε_n)` with the largest admissible
/// `ε_n = (c⁴ + 4c² + 18)/(4nc²(c² − 1)) + (n + 2)^{3/2}/c^{n+2}`.
/// Chebyshev: `π(1 − c⁻²)³/(2c^{2n}) · (1 − ((2n+3)(c² − 1) + c^{−2n−2})/c^{2n+4})⁻¹`,
/// falling back to the leading factor when the correction is not below one.
pub fn petras_explicit_lower<T: Real>(kind: WeightKind, c: T, n: usize) -> Result<T> {
    check_c(c)?;
    check_n(n)?;
    let nf = from_usize::<T>(n);
    let c2 = c * c;
    let q = T::one() - c2.recip();
    match kind {
        WeightKind::Lebesgue => {
            let four = lit::<T>(4.0);
            let eps = (c2 * c2 + four * c2 + lit(18.0)) / (four * nf * c2 * (c2 - T::one()))
                + (nf + lit(2.0)).powf(lit(1.5)) / c.powf(nf + lit(2.0));
            Ok(T::PI() * q * q * inv_pow2n(c, n) / (T::one() + eps))
        }
        WeightKind::Chebyshev => {
            let floor = T::PI() * q * q * q * lit(0.5) * inv_pow2n(c, n);
            let x = ((lit::<T>(2.0) * nf + lit(3.0)) * (c2 - T::one()) + inv_pow2n(c, n + 1)) * inv_pow2n(c, n + 2);
            if x < T::one() {
                Ok(floor / (T::one() - x))
            } else {
                Ok(floor)
            }
        }
        WeightKind::Custom => Err(Error::Unsupported("explicit bounds exist for lebesgue and chebyshev only".into())),
    }
}

/// Leading term `2π/c^{2n}` of Osipenko's asymptotics for the Chebyshev
/// weight (a reference value, not a rigorous bound).
pub fn osipenko_chebyshev<T: Real>(c: T, n: usize) -> Result<T> {
    check_c(c)?;
    check_n(n)?;
    Ok(T::TAU() * inv_pow2n(c, n))
}

/// Upper bounds for the Gauss–Legendre error constant on `𝓔_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperMethod {
    Rabinowitz,
    Petras,
    Petras26,
}

impl fmt::Display for UpperMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rabinowitz => "rabinowitz",
            Self::Petras => "petras",
            Self::Petras26 => "petras26",
        })
    }
}

impl FromStr for UpperMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rabinowitz" => Ok(Self::Rabinowitz),
            "petras" => Ok(Self::Petras),
            "petras26" => Ok(Self::Petras26),
            other => Err(Error::Usage(format!("unknown upper-bound method '{other}'"))),
        }
    }
}

/// `r_n(c) ≤ …` for the `n`-point Gauss–Legendre rule on `𝒜₀(𝓔_c, 1)`.
pub fn gauss_legendre_upper<T: Real>(c: T, n: usize, method: UpperMethod) -> Result<T> {
    check_c(c)?;
    check_n(n)?;
    let nf = from_usize::<T>(n);
    let c2n = inv_pow2n(c, n);
    Ok(match method {
        UpperMethod::Rabinowitz => {
            let v = lit::<T>(64.0) / (lit::<T>(15.0) * (T::one() - c.powi(-2))) * c2n;
            v.min(lit(4.0))
        }
        UpperMethod::Petras => {
            lit::<T>(4.0)
                * c2n
                * (T::one() + lit::<T>(3.0) / (lit::<T>(2.0) * nf * c * c) + lit::<T>(4.0) / c.powf(nf + T::one()))
        }
        UpperMethod::Petras26 => lit::<T>(26.0) * c2n,
    })
}

/// Evaluates `T_m(z)` by the three-term recurrence.
fn chebyshev_t<T: Real>(m: usize, z: Complex<T>) -> Complex<T> {
    let (mut prev, mut cur) = (Complex::new(T::one(), T::zero()), z);
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = z * cur * lit::<T>(2.0) - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `f = (2c^{2n}/(c^{4n} + 1)) T_{2n}`, bounded by one on `𝓔_c`, together with
/// the lower bound `π(1 − (4n)⁻¹)/(c^{2n}(1 + c^{−4n}))` for its
/// `n`-point Gauss–Legendre error.
pub fn chebyshev_witness_lower<T: Real>(c: T, n: usize) -> Result<(T, AnalyticFunction<T>)> {
    check_c(c)?;
    check_n(n)?;
    let nf = from_usize::<T>(n);
    let c2n = inv_pow2n(c, n);
    let c4n = c2n * c2n;
    let bound = T::PI() * (T::one() - (lit::<T>(4.0) * nf).recip()) * c2n / (T::one() + c4n);
    // 2c^{2n}/(c^{4n} + 1) = 2c^{−2n}/(1 + c^{−4n})
    let scale = lit::<T>(2.0) * c2n / (T::one() + c4n);
    let degree = 2 * n;
    let dom = Arc::new(EllipseDomain::new(c)?);
    let f = AnalyticFunction::new(move |z| chebyshev_t(degree, z) * scale, dom, T::one(), true)
        .with_real_eval(move |x: T| (from_usize::<T>(degree) * x.max(-T::one()).min(T::one()).acos()).cos() * scale);
    Ok((bound, f))
}

/// `N_l = max(1, ln(κ_l M/ε)/(2 ln c))` and `N_g = max(1, ln(κ_g M/ε)/(2 ln c))`.
pub fn info_bounds<T: Real>(m_over_eps: T, c: T, kappa_l: T, kappa_g: T) -> Result<(T, T)> {
    check_c(c)?;
    if !(m_over_eps > T::zero() && kappa_l > T::zero() && kappa_g > T::zero()) {
        return domain("M/ε and both constants must be positive");
    }
    let two_ln_c = lit::<T>(2.0) * c.ln();
    let n = |kappa: T| ((m_over_eps * kappa).ln() / two_ln_c).max(T::one());
    Ok((n(kappa_l), n(kappa_g)))
}

/// Node counts implied by [`new_lower_ellipse`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeEstimates<T> {
    /// `½ ln(M/ε) / ln ρ`.
    pub exact: T,
    /// `−ln(M/ε) / (4(c − 1) ln(c − 1))`; only defined for `c < 2`.
    pub asymptotic: Option<T>,
    /// `exact / N_g` with `N_g = ln(M/ε)/ln c`, which tends to
    /// `|1/(4 ln(c − 1))|` as `c → 1`.
    pub ratio_to_ng: T,
}

pub fn ellipse_node_estimates<T: Real>(m_over_eps: T, c: T) -> Result<NodeEstimates<T>> {
    check_c(c)?;
    if !(m_over_eps > T::one()) {
        return domain(format!("M/ε must exceed 1, got {m_over_eps}"));
    }
    let l = m_over_eps.ln();
    let exact = lit::<T>(0.5) * l / ln_ellipse_base(c);
    let cm1 = c - T::one();
    let asymptotic = (c < lit(2.0)).then(|| -l / (lit::<T>(4.0) * cm1 * cm1.ln()));
    Ok(NodeEstimates {
        exact,
        asymptotic,
        ratio_to_ng: (exact / (l / c.ln())).abs(),
    })
}

/// Whether a record bounds the error from below, from above, or is a
/// reference value (asymptotics, geometry).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Reference,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lower => "lower",
            Self::Upper => "upper",
            Self::Reference => "reference",
        })
    }
}

/// One evaluated bound with the parameters it consumed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    pub params: BTreeMap<String, f64>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightKind>,
}

/// Column order of [`BoundRecord::csv_fields`].
pub const CSV_HEADER: [&str; 8] = ["name", "kind", "c", "n", "N", "weight", "value", "provenance"];

impl BoundRecord {
    pub fn new(name: &str, kind: BoundKind, value: f64, params: &[(&str, f64)], provenance: &str) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return domain(format!("bound '{name}' evaluated to {value}"));
        }
        Ok(Self {
            name: name.to_owned(),
            kind,
            value,
            params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            provenance: provenance.to_owned(),
            weight: None,
        })
    }

    pub fn with_weight(mut self, weight: WeightKind) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn csv_fields(&self) -> [String; 8] {
        let param = |k: &str| self.params.get(k).map(|v| format_param(k, *v)).unwrap_or_default();
        [
            self.name.clone(),
            self.kind.to_string(),
            param("c"),
            param("n"),
            param("N"),
            self.weight.map(|w| w.to_string()).unwrap_or_default(),
            format!("{:e}", self.value),
            self.provenance.clone(),
        ]
    }
}

fn format_param(key: &str, v: f64) -> String {
    if matches!(key, "n" | "N") {
        format!("{}", v as u64)
    } else {
        format!("{v}")
    }
}

/// Every bound available for `n` nodes on `𝓔_c`. Weight-dependent bounds use
/// `weight`; Gauss–Legendre results are tagged with the Lebesgue weight and
/// Osipenko's asymptotics with the Chebyshev weight.
pub fn ellipse_bound_table(c: f64, n: usize, weight: WeightKind) -> Result<Vec<BoundRecord>> {
    check_c(c)?;
    check_n(n)?;
    let w = WeightMeasure::<f64>::from_kind(weight)?;
    let (_, delta) = ellipse_params(c)?;
    let nf = n as f64;
    let cn = [("c", c), ("n", nf)];
    let kappa_weight = match weight {
        WeightKind::Lebesgue => KappaWeight::Lebesgue,
        WeightKind::Chebyshev => KappaWeight::Chebyshev,
        WeightKind::Custom => return Err(Error::Unsupported("bound tables need a preset weight".into())),
    };
    let kappa0 = bakhvalov_kappa0(c, kappa_weight)?;
    let (witness, _) = chebyshev_witness_lower(c, n)?;
    let mut rows = vec![
        BoundRecord::new("delta_ellipse", BoundKind::Reference, delta, &[("c", c)], "distance from [-1,1] to the ellipse boundary (c^2-1)/(2c)")?,
        BoundRecord::new(
            "new_lower_gamma",
            BoundKind::Lower,
            new_lower_gamma(delta, n, true)?,
            &[("c", c), ("N", nf), ("delta", delta), ("L", 0.5)],
            "hyperbolic-metric bound gamma for convex domains",
        )?,
        BoundRecord::new(
            "new_lower_measure",
            BoundKind::Lower,
            new_lower_measure(&w, delta, 0.5, n)?,
            &[("c", c), ("N", nf), ("delta", delta), ("L", 0.5)],
            "hyperbolic-metric bound on J+ via the modulus of the measure",
        )?
        .with_weight(weight),
        BoundRecord::new(
            "bakhvalov",
            BoundKind::Lower,
            kappa0 * inv_pow2n(c, n),
            &[("c", c), ("n", nf), ("kappa0", kappa0)],
            "Bakhvalov kappa0 c^-2n",
        )?
        .with_weight(weight),
        BoundRecord::new(
            "petras_explicit_lower",
            BoundKind::Lower,
            petras_explicit_lower(weight, c, n)?,
            &cn,
            "Petras explicit lower bound",
        )?
        .with_weight(weight),
        BoundRecord::new("petras_kn", BoundKind::Lower, petras_kn(&w, c, n)?, &cn, "Petras k_n from orthonormal polynomial suprema")?
            .with_weight(weight),
        BoundRecord::new(
            "szego_limit",
            BoundKind::Reference,
            szego_limit(&w, c)? * inv_pow2n(c, n),
            &cn,
            "Szego asymptotics of k_n times c^-2n",
        )?
        .with_weight(weight),
        BoundRecord::new("osipenko", BoundKind::Reference, osipenko_chebyshev(c, n)?, &cn, "Osipenko asymptotics 2pi/c^2n")?
            .with_weight(WeightKind::Chebyshev),
        BoundRecord::new("chebyshev_witness", BoundKind::Lower, witness, &cn, "scaled T_2n witness for Gauss-Legendre")?
            .with_weight(WeightKind::Lebesgue),
    ];
    if weight == WeightKind::Lebesgue {
        rows.push(BoundRecord::new(
            "new_lower_ellipse",
            BoundKind::Lower,
            new_lower_ellipse(c, n)?,
            &[("c", c), ("N", nf)],
            "hyperbolic-metric bound on J+ for the ellipse",
        )?);
        rows.last_mut().expect("just pushed").weight = Some(WeightKind::Lebesgue);
    }
    for method in [UpperMethod::Rabinowitz, UpperMethod::Petras, UpperMethod::Petras26] {
        let provenance = match method {
            UpperMethod::Rabinowitz => "Rabinowitz Gauss-Legendre upper bound",
            UpperMethod::Petras => "Petras Gauss-Legendre upper bound",
            UpperMethod::Petras26 => "Petras simplified bound 26/c^2n",
        };
        rows.push(
            BoundRecord::new(&format!("upper_{method}"), BoundKind::Upper, gauss_legendre_upper(c, n, method)?, &cn, provenance)?
                .with_weight(WeightKind::Lebesgue),
        );
    }
    Ok(rows)
}

/// `c^{2n}` as `f64`, for reports.
pub fn c_pow_2n<T: Real>(c: T, n: usize) -> f64 {
    to_f64(inv_pow2n(c, n)).recip()
}
