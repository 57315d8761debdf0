use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{from_usize, lit, Real};

use super::integrate::adaptive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Lebesgue,
    Chebyshev,
    Custom,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightKind::Lebesgue => "lebesgue",
            WeightKind::Chebyshev => "chebyshev",
            WeightKind::Custom => "custom",
        })
    }
}

impl std::str::FromStr for WeightKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lebesgue" => Ok(WeightKind::Lebesgue),
            "chebyshev" => Ok(WeightKind::Chebyshev),
            "custom" => Ok(WeightKind::Custom),
            other => Err(crate::Error::Usage(format!("unknown weight '{other}'"))),
        }
    }
}

/// How a custom density behaves at `±1`. Densities flagged as singular are
/// integrated after the substitution `x = cos θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Regular,
    IntegrableSingularity,
}

type Density<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// An absolutely continuous measure `dα = p(x) dx` on `[-1, 1]`.
#[derive(Clone)]
pub struct WeightMeasure<T> {
    kind: WeightKind,
    density: Density<T>,
    endpoint: Endpoint,
    total_mass: T,
    szego_class: bool,
}

impl<T: Real> fmt::Debug for WeightMeasure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightMeasure")
            .field("kind", &self.kind)
            .field("total_mass", &self.total_mass)
            .finish()
    }
}

impl<T: Real> WeightMeasure<T> {
    /// `dα = dx`, total mass 2.
    pub fn lebesgue() -> Self {
        Self {
            kind: WeightKind::Lebesgue,
            density: Arc::new(|_| T::one()),
            endpoint: Endpoint::Regular,
            total_mass: lit(2.0),
            szego_class: true,
        }
    }

    /// `dα = dx/√(1 − x²)`, total mass π.
    pub fn chebyshev() -> Self {
        Self {
            kind: WeightKind::Chebyshev,
            density: Arc::new(|x: T| ((T::one() - x) * (T::one() + x)).sqrt().recip()),
            endpoint: Endpoint::IntegrableSingularity,
            total_mass: T::PI(),
            szego_class: true,
        }
    }

    pub fn from_kind(kind: WeightKind) -> Result<Self> {
        match kind {
            WeightKind::Lebesgue => Ok(Self::lebesgue()),
            WeightKind::Chebyshev => Ok(Self::chebyshev()),
            WeightKind::Custom => Err(crate::Error::Usage("custom weights need a density".into())),
        }
    }

    /// A user-supplied density. It must be nonnegative on a 1000-point grid;
    /// its mass is computed by the reference integrator.
    pub fn custom<F>(density: F, endpoint: Endpoint, szego_class: bool) -> Result<Self>
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        let n = 1000;
        for i in 0..n {
            let x = -T::one() + lit::<T>(2.0) * (from_usize::<T>(i) + lit(0.5)) / from_usize(n);
            let p = density(x);
            if !(p >= T::zero()) {
                return domain(format!("density is negative or undefined at {x}"));
            }
        }
        let density: Density<T> = Arc::new(density);
        let mass = match endpoint {
            Endpoint::Regular => adaptive(|x| density(x), -T::one(), T::one(), lit(1e-12))?,
            Endpoint::IntegrableSingularity => adaptive(
                |t: T| density(t.cos()) * t.sin(),
                T::zero(),
                T::PI(),
                lit(1e-12),
            )?,
        };
        if !(mass.value > T::zero()) {
            return domain("density has zero mass");
        }
        Ok(Self {
            kind: WeightKind::Custom,
            density,
            endpoint,
            total_mass: mass.value,
            szego_class,
        })
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn density(&self, x: T) -> T {
        (self.density)(x)
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    /// `α([-1, 1])`.
    pub fn total_mass(&self) -> T {
        self.total_mass
    }

    pub fn is_szego_class(&self) -> bool {
        self.szego_class
    }
}

const OMEGA_GRID: usize = 20_000;

/// Modulus of the measure: the largest `α`-mass of a Borel set of Lebesgue
/// measure at most `delta`.
///
/// The optimal set is a superlevel set of the density. Lebesgue and
/// Chebyshev weights have closed forms; custom densities use a bisection on
/// the level over a fine midpoint grid.
pub fn omega_modulus<T: Real>(w: &WeightMeasure<T>, delta: T) -> Result<T> {
    if !(delta >= T::zero()) {
        return domain(format!("ω(δ) needs δ ≥ 0, got {delta}"));
    }
    let two = lit::<T>(2.0);
    if delta >= two {
        return Ok(w.total_mass());
    }
    match w.kind() {
        WeightKind::Lebesgue => Ok(delta),
        // Two end intervals of length δ/2 each.
        WeightKind::Chebyshev => Ok(two * (T::one() - delta / two).acos()),
        WeightKind::Custom => Ok(omega_by_levels(w, delta)),
    }
}

fn omega_by_levels<T: Real>(w: &WeightMeasure<T>, delta: T) -> T {
    let h = lit::<T>(2.0) / from_usize(OMEGA_GRID);
    let values: Vec<T> = (0..OMEGA_GRID)
        .map(|i| w.density(-T::one() + h * (from_usize::<T>(i) + lit(0.5))))
        .collect();
    let top = values.iter().fold(T::zero(), |m, &v| m.max(v));
    let above = |level: T| {
        values.iter().fold((T::zero(), T::zero()), |(len, mass), &v| {
            if v > level {
                (len + h, mass + v * h)
            } else {
                (len, mass)
            }
        })
    };
    let (mut lo, mut hi) = (T::zero(), top);
    for _ in 0..200 {
        let mid = lit::<T>(0.5) * (lo + hi);
        if above(mid).0 > delta {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::epsilon() * top {
            break;
        }
    }
    let (len, mass) = above(hi);
    // Fill the remaining length at the threshold level.
    let scale = w.total_mass() / values.iter().fold(T::zero(), |s, &v| s + v * h);
    (mass + (delta - len).max(T::zero()) * hi) * scale
}
