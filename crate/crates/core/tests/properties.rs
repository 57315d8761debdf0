use std::sync::Arc;

use approx::assert_relative_eq;
use num_complex::Complex;
use proptest::prelude::*;
use quadbound_core::bounds::{new_lower_ellipse, new_lower_gamma, new_lower_measure};
use quadbound_core::domains::{ellipse_delta_at, NiceDomain};
use quadbound_core::extremal::{extremal_function, jplus_exact, jplus_minimize, OptimizerConfig};
use quadbound_core::hyperbolic::{cstar, mobius_m};
use quadbound_core::{Ellipse, Map, Scheme, Weight};

fn sorted_nodes(raw: Vec<f64>) -> Vec<f64> {
    let mut xs = raw;
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ellipse_delta_is_one_lipschitz(c in 1.01f64..5.0, x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let dom = Ellipse::new(c).unwrap();
        let (dx, dy) = (ellipse_delta_at(&dom, x).unwrap(), ellipse_delta_at(&dom, y).unwrap());
        prop_assert!((dx - dy).abs() <= (x - y).abs() + 1e-12);
        prop_assert!(dx > 0.0 && dx <= dom.delta_sup() + 1e-15);
    }

    #[test]
    fn mobius_is_a_symmetric_pseudodistance(
        (r1, t1, r2, t2) in (0.0f64..0.99, 0.0f64..6.3, 0.0f64..0.99, 0.0f64..6.3)
    ) {
        let w = Complex::from_polar(r1, t1);
        let z = Complex::from_polar(r2, t2);
        let m = mobius_m(w, z).unwrap();
        prop_assert!((0.0..1.0).contains(&m));
        prop_assert!((m - mobius_m(z, w).unwrap()).abs() <= 1e-14);
    }

    #[test]
    fn gamma_is_geometric_in_n(delta in 0.01f64..3.0, n in 1usize..20) {
        let g1 = new_lower_gamma(delta, 1, true).unwrap();
        let gn = new_lower_gamma(delta, n, true).unwrap();
        prop_assert!((gn / g1.powi(n as i32) - 1.0).abs() <= 1e-11);
        prop_assert!(gn > 0.0 && gn <= 1.0);
        prop_assert!(new_lower_gamma(delta, n, false).unwrap() < gn);
    }

    #[test]
    fn ellipse_bound_decreases(c in 1.001f64..6.0, n in 1usize..30) {
        let v = new_lower_ellipse(c, n).unwrap();
        prop_assert!(v > 0.0 && v < 2.0);
        prop_assert!(new_lower_ellipse(c, n + 1).unwrap() < v);
        prop_assert!(new_lower_ellipse(c * 1.01, n).unwrap() < v);
    }

    #[test]
    fn measure_bound_below_total_mass(delta in 0.01f64..2.0, n in 1usize..8) {
        for w in [Weight::lebesgue(), Weight::chebyshev()] {
            let v = new_lower_measure(&w, delta, 0.5, n).unwrap();
            prop_assert!(v > 0.0 && v < w.total_mass());
        }
    }

    #[test]
    fn cstar_is_symmetric_and_below_one(c in 1.05f64..4.0, x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let map = Map::for_ellipse(c).unwrap();
        let (zx, zy) = (Complex::new(x, 0.0), Complex::new(y, 0.0));
        let a = cstar(&map, zx, zy).unwrap();
        prop_assert!((a - cstar(&map, zy, zx).unwrap()).abs() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn extremal_integrand_is_nonnegative_and_bounded(
        c in 1.1f64..3.0,
        raw in prop::collection::vec(-1.0f64..1.0, 1..4),
        x in -1.0f64..1.0,
    ) {
        let nodes = sorted_nodes(raw);
        let map = Arc::new(Map::for_ellipse(c).unwrap());
        let f = extremal_function(map, &Scheme::simple(nodes).unwrap()).unwrap();
        let v = f.eval_real(x);
        prop_assert!((0.0..1.0).contains(&v));
    }
}

#[test]
fn jplus_below_total_mass_and_above_bound() {
    let map = Map::for_ellipse(1.5).unwrap();
    for w in [Weight::lebesgue(), Weight::chebyshev()] {
        for nodes in [vec![0.0], vec![-0.5, 0.5], vec![-0.9, -0.1, 0.3, 0.95]] {
            let j = jplus_exact(&map, &w, &Scheme::simple(nodes.clone()).unwrap(), 1e-12).unwrap();
            assert!(j > 0.0 && j < w.total_mass());
        }
    }
}

#[test]
fn jplus_decreases_as_c_grows() {
    let leb = Weight::lebesgue();
    let scheme = Scheme::new(vec![-0.6, 0.2, 0.7], vec![1, 2, 1]).unwrap();
    let values: Vec<f64> = [1.2, 1.5, 2.0, 3.0]
        .iter()
        .map(|&c| jplus_exact(&Map::for_ellipse(c).unwrap(), &leb, &scheme, 1e-12).unwrap())
        .collect();
    assert!(values.windows(2).all(|p| p[1] <= p[0]), "{values:?}");
}

#[test]
fn jplus_tends_to_total_mass_on_thin_ellipses() {
    let leb = Weight::lebesgue();
    let c = 1.0 + 1e-4;
    let map = Map::for_ellipse(c).unwrap();
    let j = jplus_exact(&map, &leb, &Scheme::simple(vec![0.0]).unwrap(), 1e-12).unwrap();
    assert!(j >= 0.9 * new_lower_ellipse(c, 1).unwrap());
    assert!(j > 1.99 && j < 2.0, "{j}");
}

#[test]
fn minimised_jplus_respects_the_bound_and_decreases_in_n() {
    let map = Map::for_ellipse(2.0).unwrap();
    let leb = Weight::lebesgue();
    let mut previous = f64::INFINITY;
    for n in 1..=4 {
        let cfg = OptimizerConfig {
            seed: 7,
            floor: Some(new_lower_ellipse(2.0, n).unwrap()),
            ..OptimizerConfig::default()
        };
        let m = jplus_minimize(&map, &leb, n, &cfg).unwrap();
        assert!(m.value <= previous, "N={n}: {} > {previous}", m.value);
        assert!(m.min_visited >= new_lower_ellipse(2.0, n).unwrap());
        assert_eq!(m.scheme.info_count(), n);
        previous = m.value;
    }
}

#[test]
fn composition_search_covers_the_simple_split() {
    let map = Map::for_ellipse(1.5).unwrap();
    let leb = Weight::lebesgue();
    let simple = jplus_minimize(&map, &leb, 3, &OptimizerConfig::default()).unwrap();
    let cfg = OptimizerConfig {
        search_compositions: true,
        ..OptimizerConfig::default()
    };
    let full = jplus_minimize(&map, &leb, 3, &cfg).unwrap();
    assert!(full.value <= simple.value);
    assert_relative_eq!(full.value, simple.value, max_relative = 1e-6);
}

#[test]
fn generic_over_f32() {
    let map = quadbound_core::hyperbolic::ConformalMap::<f32>::for_ellipse(2.0).unwrap();
    let w = quadbound_core::quadrature::WeightMeasure::<f32>::lebesgue();
    let scheme = quadbound_core::extremal::NodeScheme::<f32>::simple(vec![0.0]).unwrap();
    let j32 = jplus_exact(&map, &w, &scheme, 1e-5).unwrap();
    let j64 = jplus_exact(&Map::for_ellipse(2.0).unwrap(), &Weight::lebesgue(), &Scheme::simple(vec![0.0]).unwrap(), 1e-12).unwrap();
    assert_relative_eq!(j32 as f64, j64, max_relative = 1e-4);
    assert!(map.delta_sup() > 0.0);
}
