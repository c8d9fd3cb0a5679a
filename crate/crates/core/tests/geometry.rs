#![allow(clippy::excessive_precision)]

use proptest::prelude::*;

use hypercoh::geometry::{fd_check_metric, fd_check_number_derivative, metric_density, number_derivative};
use hypercoh::statistics::{expect_n, expect_n2};
use hypercoh::{ParamSet, Parity, StateSpec};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn even_small_x_slope() {
    let (a, x) = (1.5, 1e-4);
    let d = metric_density(Parity::Even, a, x).unwrap().density;
    assert!(rel(d, 2.0 * a * (a + 1.0) * x) < 1e-6);
}

#[test]
fn odd_small_x_slope() {
    // ⟨N⟩_o = 1 + (a+1)(a+2)x²/3 + O(x⁴)
    for a in [1.5, 2.5, 4.0] {
        let x = 1e-4;
        let d = metric_density(Parity::Odd, a, x).unwrap().density;
        assert!(rel(d, 2.0 / 3.0 * (a + 1.0) * (a + 2.0) * x) < 1e-6, "a = {a}");
    }
}

#[test]
fn small_x_density_ratio() {
    // density_even/density_odd → 3a/(a+2), equal to 2 only at a = 4
    for a in [1.5, 2.5, 4.0] {
        let x = 1e-5;
        let ratio = metric_density(Parity::Even, a, x).unwrap().density / metric_density(Parity::Odd, a, x).unwrap().density;
        assert!(rel(ratio, 3.0 * a / (a + 2.0)) < 1e-6);
    }
}

#[test]
fn mpmath_reference_densities() {
    for (a, x, even, odd) in [
        (2.0, 0.3, 3.9082166923183744862, 2.8982007003985024466),
        (2.5, 0.4, 7.4200699061119644084, 5.866144262340324602),
        (1.2, 0.2, 1.1386355146337950732, 1.0193904525343061186),
    ] {
        assert!(rel(metric_density(Parity::Even, a, x).unwrap().density, even) < 1e-12);
        assert!(rel(metric_density(Parity::Odd, a, x).unwrap().density, odd) < 1e-12);
    }
}

#[test]
fn finite_difference_examples() {
    for parity in [Parity::Even, Parity::Odd] {
        assert!(fd_check_metric(parity, 2.0, 0.3, 1e-5).unwrap().deviation <= 1e-6);
    }
    assert!(fd_check_metric(Parity::Even, 2.5, 0.4, 1e-5).unwrap().deviation <= 1e-6);
    assert!(fd_check_metric(Parity::Odd, 1.2, 0.2, 1e-5).unwrap().deviation <= 1e-6);
}

#[test]
fn central_difference_is_second_order() {
    for parity in [Parity::Even, Parity::Odd] {
        let d1 = fd_check_metric(parity, 2.0, 0.3, 2e-2).unwrap().deviation;
        let d2 = fd_check_metric(parity, 2.0, 0.3, 1e-2).unwrap().deviation;
        let order = d1 / d2;
        assert!((3.6..4.4).contains(&order), "{parity:?}: ratio {order}");
    }
}

#[test]
fn coarse_step_warns() {
    let c = fd_check_metric(Parity::Even, 2.0, 0.5, 0.2).unwrap();
    assert!(c.step_warning);
    assert!(!fd_check_metric(Parity::Even, 2.0, 0.5, 1e-4).unwrap().step_warning);
}

#[test]
fn identity_grid() {
    for a in [1.5, 2.5, 4.0] {
        for x in [0.1, 0.3, 0.5, 0.7] {
            for parity in [Parity::Even, Parity::Odd] {
                let c = fd_check_metric(parity, a, x, 1e-5).unwrap();
                assert!(c.deviation <= 1e-6, "a = {a}, x = {x}, {parity:?}");
            }
        }
    }
}

#[test]
fn density_equals_variance_over_x() {
    for parity in [Parity::Even, Parity::Odd] {
        let (a, x) = (2.5, 0.45);
        let s = StateSpec::with_x(ParamSet::new(vec![a], vec![]).unwrap(), parity, x).unwrap();
        let n = expect_n(&s).unwrap();
        let var = expect_n2(&s).unwrap() - n * n;
        assert!(rel(metric_density(parity, a, x).unwrap().density, var / x) < 1e-12);
    }
}

#[test]
fn weak_parameter_accepted() {
    assert!(metric_density(Parity::Even, 0.7, 0.3).unwrap().density > 0.0);
}

#[test]
fn generic_families_through_fd() {
    let params = ParamSet::new(vec![1.3], vec![2.4]).unwrap();
    for parity in [Parity::Full, Parity::Even, Parity::Odd] {
        let c = fd_check_number_derivative(&params, parity, 1.7, 1e-5).unwrap();
        assert!(c.deviation < 1e-7);
    }
    assert!(rel(number_derivative(&ParamSet::empty(), Parity::Even, 1.1).unwrap(), {
        // d/dx (x tanh x)
        let x: f64 = 1.1;
        x.tanh() + x / (x.cosh() * x.cosh())
    }) < 1e-13);
}

proptest! {
    #[test]
    fn density_positive(a in 1.01f64..8.0, x in 1e-6f64..0.99, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        prop_assert!(metric_density(parity, a, x).unwrap().density > 0.0);
    }

    #[test]
    fn density_matches_fd(a in 1.05f64..6.0, x in 0.05f64..0.8, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        prop_assert!(fd_check_metric(parity, a, x, 1e-5).unwrap().deviation < 1e-6);
    }
}
