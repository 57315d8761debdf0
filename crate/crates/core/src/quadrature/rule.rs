use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

use super::derivative::derivative_eval;
use super::function::AnalyticFunction;
use super::integrate::{integrate, Integral};
use super::weight::WeightMeasure;

/// A linear rule using derivative data,
/// `S(f) = Σ_j Σ_{k < r_j} b_{kj} f^{(k)}(z_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RuleRepr<T>",
    into = "RuleRepr<T>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + DeserializeOwned")
)]
pub struct QuadratureRule<T: Real> {
    nodes: Vec<T>,
    orders: Vec<usize>,
    coeffs: Vec<Vec<T>>,
    info_count: usize,
}

/// Wire form: `{nodes, orders, coeffs, info_count}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleRepr<T> {
    pub nodes: Vec<T>,
    pub orders: Vec<usize>,
    pub coeffs: Vec<Vec<T>>,
    pub info_count: usize,
}

impl<T: Real> TryFrom<RuleRepr<T>> for QuadratureRule<T> {
    type Error = Error;

    fn try_from(r: RuleRepr<T>) -> Result<Self> {
        let rule = Self::new(r.nodes, r.coeffs)?;
        if rule.info_count != r.info_count {
            return domain(format!(
                "info_count {} does not match the sum of orders {}",
                r.info_count, rule.info_count
            ));
        }
        if rule.orders != r.orders {
            return domain("orders do not match the coefficient shape");
        }
        Ok(rule)
    }
}

impl<T: Real> From<QuadratureRule<T>> for RuleRepr<T> {
    fn from(r: QuadratureRule<T>) -> Self {
        RuleRepr {
            nodes: r.nodes,
            orders: r.orders,
            coeffs: r.coeffs,
            info_count: r.info_count,
        }
    }
}

impl<T: Real> QuadratureRule<T> {
    /// `coeffs[j][k]` multiplies `f^{(k)}(nodes[j])`; the order of node `j`
    /// is `coeffs[j].len()`.
    pub fn new(nodes: Vec<T>, coeffs: Vec<Vec<T>>) -> Result<Self> {
        if nodes.is_empty() {
            return domain("a rule needs at least one node");
        }
        if nodes.len() != coeffs.len() {
            return domain(format!("{} nodes but {} coefficient rows", nodes.len(), coeffs.len()));
        }
        if nodes.iter().any(|x| !(x.abs() <= T::one())) {
            return domain("rule nodes must lie in [-1, 1]");
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return domain("rule nodes must be strictly ascending");
        }
        if coeffs.iter().any(|row| row.is_empty()) {
            return domain("every node needs at least one coefficient");
        }
        let orders: Vec<usize> = coeffs.iter().map(Vec::len).collect();
        let info_count = orders.iter().sum();
        Ok(Self {
            nodes,
            orders,
            coeffs,
            info_count,
        })
    }

    /// Rule using function values only.
    pub fn from_weights(nodes: Vec<T>, weights: Vec<T>) -> Result<Self> {
        Self::new(nodes, weights.into_iter().map(|w| vec![w]).collect())
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn coeffs(&self) -> &[Vec<T>] {
        &self.coeffs
    }

    /// `|ℛ| = Σ r_j`, the number of pieces of information used.
    pub fn info_count(&self) -> usize {
        self.info_count
    }

    /// Coefficients of the function values `b_{0j}`.
    pub fn value_weights(&self) -> Vec<T> {
        self.coeffs.iter().map(|row| row[0]).collect()
    }
}

/// Radius of the Cauchy circle used at node `x`.
pub(crate) fn derivative_radius<T: Real>(f: &AnalyticFunction<T>, x: T) -> Result<T> {
    Ok((f.delta_at(x)? * lit(0.5)).min(lit(0.1)))
}

/// `S(f)` for the rule, with derivatives from Cauchy integrals.
pub fn apply_rule<T: Real>(rule: &QuadratureRule<T>, f: &AnalyticFunction<T>) -> Result<T> {
    let mut total = T::zero();
    for (&x, row) in rule.nodes.iter().zip(&rule.coeffs) {
        let radius = derivative_radius(f, x)?;
        for (k, &b) in row.iter().enumerate() {
            if b == T::zero() {
                continue;
            }
            total = total + b * derivative_eval(f, x, k, radius)?;
        }
    }
    Ok(total)
}

/// Remainder `R(f, α) = I(f, α) − S(f)` together with both terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureError<T> {
    pub error: T,
    pub integral: Integral<T>,
    pub rule_value: T,
    pub tolerance: T,
}

pub fn quadrature_error<T: Real>(
    rule: &QuadratureRule<T>,
    f: &AnalyticFunction<T>,
    w: &WeightMeasure<T>,
    tol: T,
) -> Result<QuadratureError<T>> {
    let integral = integrate(f, w, tol)?;
    let rule_value = apply_rule(rule, f)?;
    Ok(QuadratureError {
        error: integral.value - rule_value,
        integral,
        rule_value,
        tolerance: tol,
    })
}
