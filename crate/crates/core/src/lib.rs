//! Worst-case error bounds for quadratures applied to bounded analytic
//! functions on symmetric domains containing `[-1, 1]`.
//!
//! Everything numerical is generic over the scalar type (`f32` or `f64`);
//! the aliases below fix it to `f64`.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod domains;
pub mod error;
pub mod extremal;
pub mod hyperbolic;
pub mod quadrature;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Ellipse = domains::EllipseDomain<f64>;
pub type Map = hyperbolic::ConformalMap<f64>;
pub type Weight = quadrature::WeightMeasure<f64>;
pub type Rule = quadrature::QuadratureRule<f64>;
pub type Function = quadrature::AnalyticFunction<f64>;
pub type Scheme = extremal::NodeScheme<f64>;
