//! Symmetric simply-connected domains containing `[-1, 1]` and their
//! distance-to-boundary geometry.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::scalar::{from_usize, lit, Real};

/// Geometry consumed by the lower bounds: the distance `δ_D(x)` from points
/// of the segment to the complement of the domain, its supremum, and the
/// Koebe constant (`1/2` for convex domains, `1/4` otherwise).
pub trait NiceDomain<T: Real>: Send + Sync {
    fn delta_at(&self, x: T) -> Result<T>;

    fn delta_sup(&self) -> T;

    fn is_convex(&self) -> bool;

    fn koebe_l(&self) -> T {
        if self.is_convex() {
            lit(0.5)
        } else {
            lit(0.25)
        }
    }
}

/// Returns the semi-axes `(a, b)` of the ellipse with foci `±1` and
/// semi-axis sum `c`.
pub fn ellipse_params<T: Real>(c: T) -> Result<(T, T)> {
    if !(c > T::one()) || !c.is_finite() {
        return domain(format!("ellipse parameter must satisfy c > 1, got {c}"));
    }
    let two_c = c + c;
    // (c^2 - 1) as (c - 1)(c + 1) keeps the minor axis accurate near c = 1.
    let minor = (c - T::one()) * (c + T::one()) / two_c;
    let major = (c * c + T::one()) / two_c;
    Ok((major, minor))
}

/// Interior of the ellipse with foci at `±1` and semi-axis sum `c > 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseDomain<T> {
    c: T,
    a: T,
    b: T,
}

impl<T: Real> EllipseDomain<T> {
    pub fn new(c: T) -> Result<Self> {
        let (a, b) = ellipse_params(c)?;
        Ok(Self { c, a, b })
    }

    /// Semi-axis sum.
    pub fn c(&self) -> T {
        self.c
    }

    /// Major semi-axis `(c² + 1) / 2c`.
    pub fn major(&self) -> T {
        self.a
    }

    /// Minor semi-axis `(c² - 1) / 2c`.
    pub fn minor(&self) -> T {
        self.b
    }

    /// `x²/a² + y²/b²`; below one strictly inside.
    pub fn level(&self, x: T, y: T) -> T {
        (x / self.a).powi(2) + (y / self.b).powi(2)
    }

    /// Boundary point at parameter angle `phi`.
    pub fn boundary_point(&self, phi: T) -> (T, T) {
        (self.a * phi.cos(), self.b * phi.sin())
    }
}

/// Distance from `x ∈ [-1, 1]` to the boundary of the ellipse.
///
/// Inside `|x| ≤ 1/a` the nearest boundary point is off the real axis and the
/// distance is `√(a² − 1)·√(1 − x²)`; beyond it the nearest point is the
/// vertex `±a`.
pub fn ellipse_delta_at<T: Real>(dom: &EllipseDomain<T>, x: T) -> Result<T> {
    if !(x.abs() <= T::one()) {
        return domain(format!("point {x} is outside [-1, 1]"));
    }
    let a = dom.a;
    if x.abs() <= a.recip() {
        // √(a² − 1) = b
        Ok(dom.b * ((T::one() - x) * (T::one() + x)).sqrt())
    } else {
        Ok((x - a).abs().min((x + a).abs()))
    }
}

impl<T: Real> NiceDomain<T> for EllipseDomain<T> {
    fn delta_at(&self, x: T) -> Result<T> {
        ellipse_delta_at(self, x)
    }

    fn delta_sup(&self) -> T {
        self.b
    }

    fn is_convex(&self) -> bool {
        true
    }
}

type DeltaFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A generic nice domain described only through `δ_D` on the segment and a
/// convexity flag.
#[derive(Clone)]
pub struct NiceDomainSpec<T> {
    delta: DeltaFn<T>,
    convex: bool,
    sup: T,
}

impl<T: Real> fmt::Debug for NiceDomainSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NiceDomainSpec")
            .field("convex", &self.convex)
            .field("delta_sup", &self.sup)
            .finish()
    }
}

const VALIDATION_GRID: usize = 4096;

impl<T: Real> NiceDomainSpec<T> {
    /// Builds a domain from its boundary-distance function.
    ///
    /// The function is sampled on a uniform grid of `[-1, 1]`: it must be
    /// strictly positive and 1-Lipschitz there.
    pub fn new<F>(delta_at: F, convex: bool) -> Result<Self>
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        let h = lit::<T>(2.0) / from_usize(VALIDATION_GRID);
        let slack = lit::<T>(1e-9);
        let mut prev: Option<(T, T)> = None;
        let mut best = (T::zero(), T::neg_infinity());
        for i in 0..=VALIDATION_GRID {
            let x = -T::one() + h * from_usize(i);
            let d = delta_at(x);
            if !(d > T::zero()) || !d.is_finite() {
                return domain(format!("δ_D({x}) = {d} is not positive; the domain must contain [-1, 1]"));
            }
            if let Some((px, pd)) = prev {
                if (d - pd).abs() > (x - px) * (T::one() + slack) + slack {
                    return domain(format!("δ_D is not 1-Lipschitz between {px} and {x}"));
                }
            }
            if d > best.1 {
                best = (x, d);
            }
            prev = Some((x, d));
        }
        let sup = refine_max(&delta_at, best.0, h);
        Ok(Self {
            delta: Arc::new(delta_at),
            convex,
            sup: sup.max(best.1),
        })
    }

    /// Open disk of the given radius centred at the origin.
    pub fn disk(radius: T) -> Result<Self> {
        if !(radius > T::one()) {
            return domain(format!("disk radius must exceed 1 to contain [-1, 1], got {radius}"));
        }
        Self::new(move |x: T| radius - x.abs(), true)
    }
}

/// Golden-section search for the maximum of `f` in `[x0 - h, x0 + h] ∩ [-1, 1]`.
fn refine_max<T: Real, F: Fn(T) -> T>(f: &F, x0: T, h: T) -> T {
    let mut lo = (x0 - h).max(-T::one());
    let mut hi = (x0 + h).min(T::one());
    let ratio = lit::<T>(0.618_033_988_749_894_8);
    for _ in 0..80 {
        let m1 = hi - ratio * (hi - lo);
        let m2 = lo + ratio * (hi - lo);
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    f((lo + hi) * lit(0.5))
}

impl<T: Real> NiceDomain<T> for NiceDomainSpec<T> {
    fn delta_at(&self, x: T) -> Result<T> {
        if !(x.abs() <= T::one()) {
            return domain(format!("point {x} is outside [-1, 1]"));
        }
        Ok((self.delta)(x))
    }

    fn delta_sup(&self) -> T {
        self.sup
    }

    fn is_convex(&self) -> bool {
        self.convex
    }
}

/// Supremum of `δ_D` over the segment.
pub fn delta_sup<T: Real, D: NiceDomain<T> + ?Sized>(dom: &D) -> T {
    dom.delta_sup()
}
