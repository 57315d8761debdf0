//! Extremal Blaschke-product integrands, the quantity `J₊`, its minimisation
//! over node placements, and the worst-case function for a given rule.

use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hyperbolic::{ln_tanh, tanh_stable, RiemannMap};
use crate::quadrature::{gauss_rule, integrate_real_with_breaks, AnalyticFunction, QuadratureRule, WeightMeasure};
use crate::scalar::{from_usize, lit, Real};

/// Least even integer `≥ k`.
pub fn round_even(k: usize) -> Result<usize> {
    if k == 0 {
        return domain("multiplicities start at 1");
    }
    Ok(k + k % 2)
}

/// Nodes `x₁ < … < x_n` in `[-1, 1]` with multiplicities `k_j ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeScheme<T> {
    nodes: Vec<T>,
    mults: Vec<usize>,
}

impl<T: Real> NodeScheme<T> {
    pub fn new(nodes: Vec<T>, mults: Vec<usize>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != mults.len() {
            return domain(format!("{} nodes with {} multiplicities", nodes.len(), mults.len()));
        }
        if nodes.iter().any(|x| !(x.abs() <= T::one())) {
            return domain("scheme nodes must lie in [-1, 1]");
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return domain("scheme nodes must be strictly ascending");
        }
        if mults.contains(&0) {
            return domain("multiplicities start at 1");
        }
        Ok(Self { nodes, mults })
    }

    /// All multiplicities equal to one.
    pub fn simple(nodes: Vec<T>) -> Result<Self> {
        let n = nodes.len();
        Self::new(nodes, vec![1; n])
    }

    /// The scheme read off a rule: its nodes with their derivative orders.
    pub fn of_rule(rule: &QuadratureRule<T>) -> Result<Self> {
        Self::new(rule.nodes().to_vec(), rule.orders().to_vec())
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// `N = Σ k_j`.
    pub fn info_count(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn even_mults(&self) -> Vec<usize> {
        self.mults.iter().map(|&k| k + k % 2).collect()
    }
}

/// Rapidities `ζ(x_j)` of the nodes paired with the even exponents.
fn node_factors<T: Real, M: RiemannMap<T> + ?Sized>(map: &M, scheme: &NodeScheme<T>) -> Result<Vec<(T, i32)>> {
    scheme
        .nodes
        .iter()
        .zip(scheme.even_mults())
        .map(|(&x, r)| Ok((map.real_rapidity(x)?, r as i32)))
        .collect()
}

/// Breakpoints graded geometrically towards every node, on the scale of the
/// distance to the boundary there, so that narrow zeros are resolved.
fn node_breakpoints<T: Real, M: RiemannMap<T> + ?Sized>(map: &M, scheme: &NodeScheme<T>) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for &x in &scheme.nodes {
        out.push(x);
        let mut h = map.delta_at(x)?.min(T::one());
        for _ in 0..8 {
            out.push(x - h);
            out.push(x + h);
            h = h * lit(0.25);
        }
    }
    Ok(out)
}

/// `∏ m(f_D(x), f_D(x_j))^{r_j}` on the segment, summed in log space.
fn real_integrand<T: Real, M: RiemannMap<T> + ?Sized>(map: &M, factors: &[(T, i32)], x: T) -> T {
    let zeta = match map.real_rapidity(x) {
        Ok(z) => z,
        Err(_) => return T::nan(),
    };
    let log = factors
        .iter()
        .fold(T::zero(), |s, &(a, r)| s + from_usize::<T>(r as usize) * ln_tanh((zeta - a).abs()));
    log.exp()
}

/// `f(z) = ∏ ((f_D(z) − f_D(x_j)) / (1 − f_D(x_j) f_D(z)))^{r(k_j)}`, the
/// unique maximiser of the integral over nonnegative functions bounded by one
/// that vanish to order `k_j` at each node. Each Möbius factor is evaluated as
/// `tanh(ζ(z) − ζ(x_j))` with `ζ = artanh f_D`.
pub fn extremal_function<T, M>(map: Arc<M>, scheme: &NodeScheme<T>) -> Result<AnalyticFunction<T>>
where
    T: Real,
    M: RiemannMap<T> + 'static,
{
    let factors = node_factors(map.as_ref(), scheme)?;
    let complex_map = Arc::clone(&map);
    let complex_factors = factors.clone();
    let eval = move |z: Complex<T>| match complex_map.rapidity(z) {
        Ok(zeta) => complex_factors.iter().fold(Complex::new(T::one(), T::zero()), |p, &(a, r)| {
            p * tanh_stable(zeta - a).powi(r)
        }),
        Err(_) => Complex::new(T::nan(), T::nan()),
    };
    let real_map = Arc::clone(&map);
    let breaks = node_breakpoints(map.as_ref(), scheme)?;
    Ok(AnalyticFunction::new(eval, map, T::one(), true)
        .with_real_eval(move |x| real_integrand(real_map.as_ref(), &factors, x))
        .with_breakpoints(breaks))
}

/// `J₊(D; X; 𝒦) = ∫ ∏ c_D*(x, x_j)^{r(k_j)} dα(x)`.
pub fn jplus_exact<T: Real, M: RiemannMap<T> + ?Sized>(
    map: &M,
    w: &WeightMeasure<T>,
    scheme: &NodeScheme<T>,
    tol: T,
) -> Result<T> {
    let factors = node_factors(map, scheme)?;
    let breaks = node_breakpoints(map, scheme)?;
    Ok(integrate_real_with_breaks(|x| real_integrand(map, &factors, x), w, &breaks, tol)?.value)
}

/// Settings for [`jplus_minimize`].
#[derive(Clone, Debug)]
pub struct OptimizerConfig<T> {
    pub seed: u64,
    /// Also search every composition of `N` into multiplicities (`N ≤ 6`).
    pub search_compositions: bool,
    /// Integration tolerance for each `J₊` evaluation.
    pub tol: T,
    /// Coordinate steps stop below this size.
    pub step_tol: T,
    /// Seeded random starts added to the Chebyshev, equispaced and Gauss ones.
    pub random_starts: usize,
    /// Evaluation budget per start.
    pub max_evaluations: usize,
    /// A proven lower bound for `J₊`; every visited scheme is checked against it.
    pub floor: Option<T>,
}

impl<T: Real> Default for OptimizerConfig<T> {
    fn default() -> Self {
        Self {
            seed: 0,
            search_compositions: false,
            tol: lit(1e-10),
            step_tol: lit(1e-10),
            random_starts: 2,
            max_evaluations: 4000,
            floor: None,
        }
    }
}

/// Best scheme found by [`jplus_minimize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Minimum<T> {
    pub value: T,
    pub scheme: NodeScheme<T>,
    /// Smallest value seen at any visited scheme.
    pub min_visited: T,
    pub evaluations: usize,
}

const MAX_COMPOSITION_N: usize = 6;

/// Upper estimate of `J₊(D; N) = inf J₊(D; X; 𝒦)` over schemes with
/// `Σ k_j = N`, by multistart coordinate descent on the node positions.
pub fn jplus_minimize<T, M>(map: &M, w: &WeightMeasure<T>, n_info: usize, cfg: &OptimizerConfig<T>) -> Result<Minimum<T>>
where
    T: Real,
    M: RiemannMap<T> + Sync + ?Sized,
{
    if n_info == 0 {
        return domain("N must be at least 1");
    }
    let compositions = if cfg.search_compositions && n_info <= MAX_COMPOSITION_N {
        compositions_of(n_info)
    } else {
        vec![vec![1; n_info]]
    };
    let mut tasks = Vec::new();
    for mults in &compositions {
        for start in starts::<T>(mults.len(), cfg)? {
            tasks.push((mults.clone(), start));
        }
    }
    let results: Vec<Result<Minimum<T>>> = tasks
        .par_iter()
        .map(|(mults, start)| descend(map, w, mults, start.clone(), cfg))
        .collect();

    let mut best: Option<Minimum<T>> = None;
    let mut min_visited = T::infinity();
    let mut evaluations = 0;
    for r in results {
        let m = r?;
        min_visited = min_visited.min(m.min_visited);
        evaluations += m.evaluations;
        let better = match &best {
            None => true,
            Some(b) => m.value < b.value || (m.value == b.value && lex_less(m.scheme.nodes(), b.scheme.nodes())),
        };
        if better {
            best = Some(m);
        }
    }
    let mut best = best.expect("at least one start");
    if let Some(floor) = cfg.floor {
        if min_visited < floor {
            return Err(Error::Domain(format!(
                "J+ = {min_visited} at a visited scheme falls below the proven lower bound {floor}"
            )));
        }
    }
    best.min_visited = min_visited;
    best.evaluations = evaluations;
    Ok(best)
}

fn lex_less<T: Real>(a: &[T], b: &[T]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x < y;
        }
    }
    a.len() < b.len()
}

fn compositions_of(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..n - 1 {
                if mask >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}

fn starts<T: Real>(n: usize, cfg: &OptimizerConfig<T>) -> Result<Vec<Vec<T>>> {
    let mut out = Vec::new();
    let nf = from_usize::<T>(n);
    let cheb: Vec<T> = (1..=n)
        .rev()
        .map(|j| (from_usize::<T>(2 * j - 1) * T::PI() / (lit::<T>(2.0) * nf)).cos())
        .collect();
    out.push(cheb);
    let equi: Vec<T> = (0..n)
        .map(|j| from_usize::<T>(2 * j + 1) / nf - T::one())
        .collect();
    out.push(equi);
    out.push(gauss_rule(&WeightMeasure::<T>::lebesgue(), n)?.nodes().to_vec());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..cfg.random_starts {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.95..0.95)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        for j in 1..n {
            if xs[j] - xs[j - 1] < 1e-3 {
                xs[j] = xs[j - 1] + 1e-3;
            }
        }
        out.push(xs.into_iter().map(|x| lit::<T>(x.min(1.0))).collect());
    }
    for s in &mut out {
        symmetrize_if_close(s);
    }
    out.dedup();
    Ok(out)
}

/// Exact `0` for a middle node that rounding left at `±ε`.
fn symmetrize_if_close<T: Real>(s: &mut [T]) {
    for x in s.iter_mut() {
        if x.abs() < lit(1e-15) {
            *x = T::zero();
        }
    }
}

fn descend<T, M>(map: &M, w: &WeightMeasure<T>, mults: &[usize], mut x: Vec<T>, cfg: &OptimizerConfig<T>) -> Result<Minimum<T>>
where
    T: Real,
    M: RiemannMap<T> + ?Sized,
{
    let n = x.len();
    let gap = lit::<T>(1e-9);
    let mut evaluations = 0;
    let mut min_visited = T::infinity();
    let mut eval = |xs: &[T]| -> Result<T> {
        let v = jplus_exact(map, w, &NodeScheme::new(xs.to_vec(), mults.to_vec())?, cfg.tol)?;
        evaluations += 1;
        min_visited = min_visited.min(v);
        Ok(v)
    };
    let mut best = eval(&x)?;
    let mut step = lit::<T>(0.25) / from_usize(n);
    let mut budget = cfg.max_evaluations;
    while step >= cfg.step_tol && budget > 0 {
        let mut improved = false;
        for j in 0..n {
            let lo = if j == 0 { -T::one() } else { x[j - 1] + gap };
            let hi = if j + 1 == n { T::one() } else { x[j + 1] - gap };
            for dir in [T::one(), -T::one()] {
                let cand = (x[j] + dir * step).max(lo).min(hi);
                if cand == x[j] || budget == 0 {
                    continue;
                }
                let mut trial = x.clone();
                trial[j] = cand;
                budget -= 1;
                let v = eval(&trial)?;
                if v < best {
                    best = v;
                    x = trial;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step = step * lit(0.5);
        }
    }
    Ok(Minimum {
        value: best,
        scheme: NodeScheme::new(x, mults.to_vec())?,
        min_visited,
        evaluations,
    })
}

/// The worst-case function for a linear rule together with its guaranteed
/// error.
#[derive(Clone, Debug)]
pub struct Adversary<T: Real> {
    pub function: AnalyticFunction<T>,
    pub scheme: NodeScheme<T>,
    pub bound: T,
    /// `M · J₊(D; X; 𝒦)` for the rule's own scheme.
    pub guaranteed_error: T,
}

/// `f₀ = M · f` with `f` the extremal function at the rule's nodes and
/// orders. The rule sees only zero data from `f₀`, so for a linear rule
/// `|I(f₀) − S(f₀)| = I(f₀) = M · J₊`.
pub fn adversary_for_rule<T, M>(
    map: Arc<M>,
    w: &WeightMeasure<T>,
    rule: &QuadratureRule<T>,
    bound: T,
    tol: T,
) -> Result<Adversary<T>>
where
    T: Real,
    M: RiemannMap<T> + 'static,
{
    if !(bound >= T::zero()) || !bound.is_finite() {
        return domain(format!("M must be finite and nonnegative, got {bound}"));
    }
    let scheme = NodeScheme::of_rule(rule)?;
    let jplus = jplus_exact(map.as_ref(), w, &scheme, tol)?;
    let function = extremal_function(map, &scheme)?.scaled(bound);
    Ok(Adversary {
        function,
        scheme,
        bound,
        guaranteed_error: bound * jplus,
    })
}

/// Descriptor used when exporting an adversary on an ellipse.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryDescriptor<T> {
    pub c: T,
    pub nodes: Vec<T>,
    pub mults: Vec<usize>,
    #[serde(rename = "M")]
    pub bound: T,
}

/// `(x, f(x))` on `points` equispaced nodes of `[-1, 1]`.
pub fn sample_table<T: Real>(f: &AnalyticFunction<T>, points: usize) -> Vec<(T, T)> {
    let last = from_usize::<T>(points.max(2) - 1);
    (0..points.max(2))
        .map(|i| {
            let x = lit::<T>(2.0) * from_usize::<T>(i) / last - T::one();
            (x, f.eval_real(x))
        })
        .collect()
}

/// `h(z) = (ω g(z) + conj(ω g(z̄))) / 2`, real on the real axis and bounded
/// by the bound of `g`.
pub fn symmetrize_real<T: Real>(g: &AnalyticFunction<T>, omega: Complex<T>) -> Result<AnalyticFunction<T>> {
    if (omega.norm() - T::one()).abs() > lit(1e-12) {
        return domain(format!("ω must be unimodular, |ω| = {}", omega.norm()));
    }
    let inner = g.clone();
    let half = lit::<T>(0.5);
    let eval = move |z: Complex<T>| (inner.eval(z) * omega + (inner.eval(z.conj()) * omega).conj()) * half;
    let real = g.clone();
    Ok(AnalyticFunction::new(eval, Arc::clone(g.domain()), g.bound(), true)
        .with_real_eval(move |x| (real.eval(Complex::new(x, T::zero())) * omega).re))
}
