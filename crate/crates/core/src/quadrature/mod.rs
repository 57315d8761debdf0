//! Weight measures, the reference integrator, orthonormal polynomials, Gauss
//! rules and rules with derivative data.

mod derivative;
mod function;
mod gauss;
pub mod integrate;
mod orthopoly;
mod rule;
mod weight;

pub use derivative::derivative_eval;
pub use function::{polynomial_function, AnalyticFunction};
pub use gauss::gauss_rule;
pub use integrate::{adaptive, adaptive_with_breaks, integrate, integrate_real, integrate_real_with_breaks, Integral};
pub use orthopoly::{orthonormal_polys, OrthonormalPolynomials};
pub use rule::{apply_rule, quadrature_error, QuadratureError, QuadratureRule, RuleRepr};
pub use weight::{omega_modulus, Endpoint, WeightKind, WeightMeasure};
