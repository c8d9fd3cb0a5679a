#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use proptest::prelude::*;

use hypercoh::states::{default_truncation, photon_distribution};
use hypercoh::statistics::*;
use hypercoh::{Error, Execution, ParamSet, Parity, StateSpec};

fn ps(a: &[f64], b: &[f64]) -> ParamSet {
    ParamSet::new(a.to_vec(), b.to_vec()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `Σ f(n) P(n)` from the photon distribution.
fn distribution_moment(s: &StateSpec, f: impl Fn(f64) -> f64) -> f64 {
    let n_max = default_truncation(s) as u64 + 20;
    (0..=n_max).map(|n| f(n as f64) * photon_distribution(s, n).unwrap()).sum()
}

#[test]
fn odd_order_moments_vanish() {
    let s = StateSpec::with_x(ps(&[1.5], &[]), Parity::Even, 0.5).unwrap();
    assert_eq!(expect_adag_s_a_r(&s, 1, 0).unwrap(), Complex64::new(0.0, 0.0));
}

#[test]
fn even_glauber_mean() {
    for x in [0.3f64, 1.0, 2.5] {
        let s = StateSpec::with_x(ParamSet::empty(), Parity::Even, x).unwrap();
        let v = expect_adag_s_a_r(&s, 1, 1).unwrap();
        assert!(rel(v.re, x * x.tanh()) < 1e-13);
        assert!(rel(v.re, distribution_moment(&s, |n| n)) < 1e-12);
        assert!(rel(expect_n(&s).unwrap(), x * x.tanh()) < 1e-13);
    }
}

#[test]
fn second_factorial_moment_odd() {
    let s = StateSpec::with_x(ps(&[1.4], &[2.2]), Parity::Odd, 0.7).unwrap();
    let v = expect_adag_s_a_r(&s, 2, 2).unwrap().re;
    assert!(rel(v, distribution_moment(&s, |n| n * (n - 1.0))) < 1e-9);
}

#[test]
fn limits_at_small_label() {
    let e0 = StateSpec::with_x(ps(&[1.3], &[]), Parity::Even, 0.0).unwrap();
    assert_eq!(expect_n(&e0).unwrap(), 0.0);
    assert_eq!(expect_n2(&e0).unwrap(), 0.0);
    let o = StateSpec::with_x(ParamSet::empty(), Parity::Odd, 1e-8).unwrap();
    assert!((expect_n(&o).unwrap() - 1.0).abs() < 1e-12);
    assert!((expect_n2(&o).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn second_moment_kummer_family() {
    let s = StateSpec::with_x(ps(&[1.2], &[2.5]), Parity::Even, 0.4).unwrap();
    let v = expect_n2(&s).unwrap();
    assert!(rel(v, distribution_moment(&s, |n| n * n)) < 1e-9);
    // mpmath
    assert!(rel(v, 0.097008525323911253009) < 1e-13);
}

#[test]
fn mandel_small_x_binomial() {
    let e = StateSpec::with_x(ps(&[1.5], &[]), Parity::Even, 1e-3).unwrap();
    let o = StateSpec::with_x(ps(&[1.5], &[]), Parity::Odd, 1e-3).unwrap();
    assert!((mandel_q(&e).unwrap().q_value - 1.0).abs() < 1e-5);
    assert!((mandel_q(&o).unwrap().q_value + 1.0).abs() < 1e-5);
}

#[test]
fn mandel_even_glauber_at_one() {
    let s = StateSpec::with_x(ParamSet::empty(), Parity::Even, 1.0).unwrap();
    let m = mandel_q(&s).unwrap();
    assert!(rel(m.q_value, 1.0 / 1f64.tanh() - 1f64.tanh()) < 1e-13);
    assert!(rel(m.q_value, 0.55144112954356641552) < 1e-13);
    let mean = distribution_moment(&s, |n| n);
    let second = distribution_moment(&s, |n| n * n);
    assert!((m.q_value - ((second - mean * mean) / mean - 1.0)).abs() < 1e-12);
    assert!(m.mean_n2 >= m.mean_n * m.mean_n);
}

#[test]
fn mandel_degenerate_at_origin() {
    let s = StateSpec::with_x(ps(&[2.0], &[]), Parity::Even, 0.0).unwrap();
    assert!(matches!(mandel_q(&s), Err(Error::Degenerate(_))));
    assert_eq!(mandel_limit_at_origin(Parity::Even), 1.0);
    assert_eq!(mandel_limit_at_origin(Parity::Odd), -1.0);
}

#[test]
fn odd_binomial_mandel_expansion() {
    // Q_o = −1 + (2/3)(a+1)(a+2) x² + O(x⁴)
    for a in [1.2, 2.0, 5.0] {
        let x = 1e-3;
        let s = StateSpec::with_x(ps(&[a], &[]), Parity::Odd, x).unwrap();
        let q = mandel_q(&s).unwrap().q_value;
        let predicted = -1.0 + 2.0 / 3.0 * (a + 1.0) * (a + 2.0) * x * x;
        assert!((q - predicted).abs() < 1e-9, "a = {a}: {q} vs {predicted}");
    }
}

#[test]
fn oracle_equivalence_grid() {
    let grid = [(ps(&[], &[]), [0.1, 0.5, 1.0]), (ps(&[1.5], &[]), [0.1, 0.5, 0.9]), (ps(&[1.4], &[2.2]), [0.1, 0.5, 1.0])];
    for (params, xs) in grid {
        for x in xs {
            for parity in [Parity::Full, Parity::Even, Parity::Odd] {
                let s = StateSpec::with_x(params.clone(), parity, x).unwrap();
                assert!(rel(expect_n(&s).unwrap(), distribution_moment(&s, |n| n)) < 1e-8);
                assert!(rel(expect_n2(&s).unwrap(), distribution_moment(&s, |n| n * n)) < 1e-8);
            }
        }
    }
}

#[test]
fn mandel_sign_laws_at_small_x() {
    for params in [ps(&[], &[]), ps(&[], &[0.6]), ps(&[1.5], &[]), ps(&[0.4], &[3.0]), ps(&[2.2, 3.1], &[1.4])] {
        let e = StateSpec::with_x(params.clone(), Parity::Even, 1e-3).unwrap();
        let o = StateSpec::with_x(params, Parity::Odd, 1e-3).unwrap();
        assert!(mandel_q(&e).unwrap().q_value > 0.0);
        assert!(mandel_q(&o).unwrap().q_value < 0.0);
    }
}

#[test]
fn odd_binomial_mandel_changes_sign() {
    // the odd family turns super-Poissonian well inside the unit disc
    let s = |x| StateSpec::with_x(ps(&[2.0], &[]), Parity::Odd, x).unwrap();
    assert!(mandel_q(&s(0.35)).unwrap().q_value < 0.0);
    assert!(mandel_q(&s(0.45)).unwrap().q_value > 0.0);
}

#[test]
fn partition_function_examples() {
    assert_eq!(thermal_partition(&ThermalSpec::new(100.0, 1.0).unwrap()), 1.0);
    assert!((thermal_partition(&ThermalSpec::new(std::f64::consts::LN_2, 1.0).unwrap()) - 2.0).abs() < 1e-15);
    let u = (-1f64).exp();
    let oracle: f64 = (0..50).map(|n| u.powi(n)).sum();
    assert!(rel(thermal_partition(&ThermalSpec::new(0.5, 2.0).unwrap()), oracle) < 1e-15);
}

#[test]
fn thermal_moment_examples() {
    let t = ThermalSpec::new(1.0, 1.0).unwrap();
    assert_eq!(thermal_normal_moment(&t, 0), 1.0);
    assert!(rel(thermal_normal_moment(&t, 1), 1.0 / (1f64.exp() - 1.0)) < 1e-15);
    assert!(rel(mean_occupation(&t), 1.0 / (1f64.exp() - 1.0)) < 1e-15);

    let t = ThermalSpec::new(0.7, 1.0).unwrap();
    let u = (-0.7f64).exp();
    let oracle: f64 = (3..2000).map(|n| {
        let n = n as f64;
        n * (n - 1.0) * (n - 2.0) * (1.0 - u) * u.powf(n)
    }).sum();
    assert!(rel(thermal_normal_moment(&t, 3), oracle) < 1e-12);
    assert!(rel(thermal_normal_moment(&t, 3), 5.7591072861513600266) < 1e-13);
}

#[test]
fn raw_moments_follow_from_normal_moments() {
    // ⟨N^r⟩ = Σ_k S(r,k) ⟨(a†)^k a^k⟩ with Stirling numbers of the second kind
    let stirling = [
        vec![1.0],
        vec![0.0, 1.0],
        vec![0.0, 1.0, 1.0],
        vec![0.0, 1.0, 3.0, 1.0],
        vec![0.0, 1.0, 7.0, 6.0, 1.0],
        vec![0.0, 1.0, 15.0, 25.0, 10.0, 1.0],
    ];
    for bw in [0.5, 1.0, 3.0] {
        let t = ThermalSpec::new(bw, 1.0).unwrap();
        for (r, row) in stirling.iter().enumerate() {
            let via: f64 = row.iter().enumerate().map(|(k, s)| s * thermal_normal_moment(&t, k as u32)).sum();
            assert!(rel(thermal_raw_moment(&t, r as u32), via) < 1e-13);
        }
    }
}

#[test]
fn sampling_determinism_and_parity() {
    let s = StateSpec::with_x(ps(&[1.4], &[2.2]), Parity::Even, 2.0).unwrap();
    let a = sample_photon_counts(&s, 50_000, 11, Execution::Parallel).unwrap();
    let b = sample_photon_counts(&s, 50_000, 11, Execution::Sequential).unwrap();
    let c = sample_photon_counts(&s, 50_000, 12, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.iter().all(|n| n.is_multiple_of(2)));
}

#[test]
fn sample_mean_matches_expectation() {
    let s = StateSpec::with_x(ps(&[1.4], &[2.2]), Parity::Odd, 3.0).unwrap();
    let counts = sample_photon_counts(&s, 200_000, 3, Execution::default()).unwrap();
    let summary = summarize_counts(&counts, Parity::Odd).unwrap();
    let mean = expect_n(&s).unwrap();
    assert!((summary.mean - mean).abs() < 4.0 * summary.mean_std_error);
    let q = mandel_q(&s).unwrap().q_value;
    assert!((summary.q - q).abs() < 4.0 * summary.q_std_error);
    assert_eq!(summary.parity_violations, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity_changing_operators_vanish(s in 0u32..5, r in 0u32..5, x in 0.05f64..2.0, odd in any::<bool>()) {
        prop_assume!((s + r) % 2 == 1);
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let st = StateSpec::with_x(ps(&[1.1], &[0.6]), parity, x).unwrap();
        prop_assert_eq!(expect_adag_s_a_r(&st, s, r).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn factorial_moments_match_distribution(r in 1u32..4, x in 0.05f64..0.9, a in 0.3f64..4.0, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let st = StateSpec::with_x(ps(&[a], &[]), parity, x).unwrap();
        let oracle = distribution_moment(&st, |n| (0..r).map(|k| n - f64::from(k)).product());
        prop_assume!(oracle > 1e-200);
        let v = expect_adag_s_a_r(&st, r, r).unwrap().re;
        prop_assert!(rel(v, oracle) < 1e-8);
    }

    #[test]
    fn mandel_variance_nonnegative(x in 0.01f64..3.0, b in 0.2f64..4.0, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let m = mandel_q(&StateSpec::with_x(ps(&[], &[b]), parity, x).unwrap()).unwrap();
        prop_assert!(m.mean_n2 >= m.mean_n * m.mean_n * (1.0 - 1e-12));
        prop_assert!(m.q_value >= -1.0 - 1e-12);
    }

    #[test]
    fn thermal_factorial_closed_form(bw in 0.05f64..20.0, r in 0u32..=6) {
        let t = ThermalSpec::new(bw, 1.0).unwrap();
        let nbar = 1.0 / bw.exp_m1();
        let oracle = (1..=r).map(f64::from).product::<f64>() * nbar.powi(r as i32);
        prop_assert!(rel(thermal_normal_moment(&t, r), oracle) < 1e-12);
    }

    #[test]
    fn distribution_normalized(x in 0.05f64..0.95, a in 0.3f64..4.0, b in 0.3f64..4.0) {
        let st = StateSpec::with_x(ps(&[a, b], &[1.0]), Parity::Full, x).unwrap();
        prop_assert!((distribution_moment(&st, |_| 1.0) - 1.0).abs() < 1e-12);
    }
}
