//! Fubini–Study metric density of the even/odd `p = 1, q = 0` states.
//!
//! The line element is `dσ² = g(x) dz̄ dz` with `g = d⟨N⟩/dx`. Writing the
//! parity normalizer as `N(x)`,
//! `g = (N'/N)·(N − xN')/N + xN''/N`, and `N − xN' = Σ (1−n) t_n` is summed
//! term by term so the odd family keeps full relative accuracy near `x = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::special::{hyper_part, RatioSeries, TERM_CAP};
use crate::states::{Parity, StateSpec, STATE_TOL};
use crate::statistics::expect_n;

/// Relative agreement expected between the analytic density and a central
/// difference.
pub const FD_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSample {
    pub x: f64,
    pub density: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdCheck {
    pub analytic: f64,
    pub central: f64,
    /// `|analytic − central| / |analytic|`.
    pub deviation: f64,
    /// Richardson extrapolation from steps `h` and `h/2`.
    pub richardson: f64,
    /// Set when `|richardson − central|/|analytic|` exceeds [`FD_TOLERANCE`],
    /// i.e. the step is too coarse to resolve the derivative.
    pub step_warning: bool,
}

/// `Σ_{n ∈ part} (1 − n) t_n` with `t_n` the terms of `pFq(a;b;x)`.
fn sum_weighted_defect(params: &ParamSet, parity: Parity, x: f64) -> Result<f64> {
    let series = RatioSeries { num: params.a(), den: params.b(), x, part: parity.part() };
    let mut t = 1.0;
    let mut sum = 0.0;
    let mut small_run = 0;
    for n in 0..TERM_CAP {
        if parity.allows(n) {
            let w = (1.0 - n as f64) * t;
            sum += w;
            if w.abs() < STATE_TOL * sum.abs() {
                small_run += 1;
            } else {
                small_run = 0;
            }
        }
        let r = series.ratio(n);
        // the weights |1−k| grow linearly, so the tail past n is at most
        // t·r·(n/(1−r) + 1/(1−r)²) once the ratio has settled below 1
        if small_run >= 3 && r < 1.0 && series.ratio(n + 1) <= r {
            let tail = t * r * (n as f64 / (1.0 - r) + 1.0 / ((1.0 - r) * (1.0 - r)));
            if tail < STATE_TOL * sum.abs() {
                return Ok(sum);
            }
        }
        t *= r;
        if t == 0.0 {
            return Ok(sum);
        }
        if !t.is_finite() {
            return Err(Error::Overflow(format!("defect series overflowed at n = {n}")));
        }
    }
    Err(Error::NonConvergence { terms: TERM_CAP, last_term: t })
}

/// `d⟨N⟩/dx` for any parameter set and parity.
pub fn number_derivative(params: &ParamSet, parity: Parity, x: f64) -> Result<f64> {
    StateSpec::with_x(params.clone(), if x == 0.0 { Parity::Even } else { parity }, x)?;
    if x == 0.0 {
        return Ok(match parity {
            Parity::Full => params.pochhammer_ratio(1),
            _ => 0.0,
        });
    }
    let value = |k: u32, part: Parity| -> Result<f64> {
        let shifted = params.shifted(f64::from(k));
        Ok(params.pochhammer_ratio(k) * hyper_part(&shifted, x, part.part(), STATE_TOL)?.value)
    };
    let n0 = value(0, parity)?;
    let n1 = value(1, parity.opposite())?;
    let n2 = value(2, parity)?;
    let defect = sum_weighted_defect(params, parity, x)?;
    Ok(n1 / n0 * (defect / n0) + x * n2 / n0)
}

/// Metric density of the even or odd `₁F₀`-family state with parameter `a`.
pub fn metric_density(parity: Parity, a: f64, x: f64) -> Result<MetricSample> {
    if parity == Parity::Full {
        return Err(Error::ParityRequired);
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("x must be non-negative, got {x}")));
    }
    if x >= 1.0 {
        return Err(Error::Domain(format!("x = {x} is outside the unit disc of the 1F0 family")));
    }
    let params = ParamSet::new(vec![a], vec![])?;
    if a <= 1.0 {
        log::warn!("metric density requested for a = {a} <= 1; the associated weight is not a finite measure");
    }
    Ok(MetricSample { x, density: number_derivative(&params, parity, x)? })
}

/// Compares `d⟨N⟩/dx` with central differences of `⟨N⟩` for any family.
pub fn fd_check_number_derivative(params: &ParamSet, parity: Parity, x: f64, h: f64) -> Result<FdCheck> {
    if !(h > 0.0 && h < x) {
        return Err(Error::Domain(format!("finite-difference step needs 0 < h < x, got h = {h}, x = {x}")));
    }
    let mean = |xx: f64| -> Result<f64> { expect_n(&StateSpec::with_x(params.clone(), parity, xx)?) };
    let central_at = |step: f64| -> Result<f64> { Ok((mean(x + step)? - mean(x - step)?) / (2.0 * step)) };
    let analytic = number_derivative(params, parity, x)?;
    let central = central_at(h)?;
    let half = central_at(0.5 * h)?;
    let richardson = (4.0 * half - central) / 3.0;
    let scale = analytic.abs();
    let step_warning = (richardson - central).abs() > FD_TOLERANCE * scale;
    if step_warning {
        log::warn!("finite-difference step h = {h} is too coarse at x = {x}");
    }
    Ok(FdCheck { analytic, central, deviation: (analytic - central).abs() / scale, richardson, step_warning })
}

/// [`fd_check_number_derivative`] for the `₁F₀` family; requires `0 < h < x < 1 − h`.
pub fn fd_check_metric(parity: Parity, a: f64, x: f64, h: f64) -> Result<FdCheck> {
    if !(x + h < 1.0) {
        return Err(Error::Domain(format!("x + h = {} leaves the unit disc", x + h)));
    }
    if parity == Parity::Full {
        return Err(Error::ParityRequired);
    }
    fd_check_number_derivative(&ParamSet::new(vec![a], vec![])?, parity, x, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_at_origin() {
        assert_eq!(metric_density(Parity::Even, 2.0, 0.0).unwrap().density, 0.0);
        assert_eq!(metric_density(Parity::Odd, 2.0, 0.0).unwrap().density, 0.0);
    }

    #[test]
    fn rejects_outside_disc() {
        assert!(matches!(metric_density(Parity::Even, 2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(metric_density(Parity::Odd, 2.0, -0.1), Err(Error::Domain(_))));
        assert_eq!(metric_density(Parity::Full, 2.0, 0.2).unwrap_err(), Error::ParityRequired);
    }

    #[test]
    fn glauber_full_density_is_one() {
        // <N> = x for the full Glauber state
        for x in [0.0, 0.3, 2.0] {
            let g = number_derivative(&ParamSet::empty(), Parity::Full, x).unwrap();
            assert!((g - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn fd_step_validation() {
        assert!(fd_check_metric(Parity::Even, 2.0, 0.3, 0.5).is_err());
        assert!(fd_check_metric(Parity::Even, 2.0, 0.9, 0.2).is_err());
    }
}
