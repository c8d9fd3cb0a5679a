//! Modified Bessel function of the second kind.

use crate::error::{Error, Result};

const LOG_WINDOW: f64 = 46.0;
const MAX_HALVINGS: u32 = 14;
const REL_TOL: f64 = 1e-13;

fn ln_cosh(v: f64) -> f64 {
    let a = v.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `K_ν(x)` from `∫_0^∞ e^{−x cosh t} cosh(νt) dt`.
///
/// The integrand is even and analytic in `t`, so the trapezoid rule converges
/// geometrically in `1/h`. The sum is scaled by the integrand's peak to stay
/// finite for tiny `x` and large `|ν|`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let ln = ln_bessel_k(nu, x)?;
    if ln > 709.0 {
        return Err(Error::Overflow(format!("K_{nu}({x}) exceeds the f64 range")));
    }
    Ok(ln.exp())
}

/// `ln K_ν(x)`; finite well beyond the range where `K_ν` itself overflows.
pub(crate) fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires x > 0, got {x}")));
    }
    let nu = nu.abs();
    // e^{−x cosh t} = e^{−x} e^{−2x sinh²(t/2)}; the factor e^{−x} is restored at the end
    let log_f = |t: f64| {
        let sh = (0.5 * t).sinh();
        -2.0 * x * sh * sh + ln_cosh(nu * t)
    };
    // peak of the integrand sits near x·sinh t = ν
    let t_peak = if nu > 0.0 { (nu / x).asinh() } else { 0.0 };
    let peak = log_f(t_peak).max(log_f(0.0));
    // width of the peak for large x is about 1/sqrt(x cosh t_peak)
    let width = (2.0 * LOG_WINDOW / (x * t_peak.cosh())).sqrt().min(1.0);
    let mut t_max = t_peak + width;
    while log_f(t_max) > peak - LOG_WINDOW {
        t_max *= 1.5;
    }
    // below the peak the integrand may also be negligible long before t = 0
    let mut step = width;
    let mut t_min = t_peak;
    while t_min > 0.0 && log_f(t_min) > peak - LOG_WINDOW {
        t_min = (t_min - step).max(0.0);
        step *= 1.5;
    }
    // the integrand is even, so a window touching t = 0 gets a half weight there
    let end_weight = if t_min == 0.0 { 0.5 } else { 1.0 };
    let f = |t: f64| (log_f(t) - peak).exp();

    let span = t_max - t_min;
    let mut h = span / 32.0;
    let mut raw = end_weight * f(t_min);
    let mut k = 1;
    while (k as f64) * h <= span {
        raw += f(t_min + k as f64 * h);
        k += 1;
    }
    let mut estimate = raw * h;
    for _ in 0..MAX_HALVINGS {
        h /= 2.0;
        let mut j = 1.0;
        while j * h <= span {
            raw += f(t_min + j * h);
            j += 2.0;
        }
        let next = raw * h;
        let converged = (next - estimate).abs() <= REL_TOL * next.abs();
        estimate = next;
        if converged {
            return Ok(estimate.ln() + peak - x);
        }
    }
    Err(Error::NonConvergence { terms: k, last_term: h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_integer_closed_form() {
        for &x in &[1e-6, 0.1, 2.0, 30.0] {
            let exact = (PI / (2.0 * x)).sqrt() * (-x).exp();
            let k = bessel_k(0.5, x).unwrap();
            assert!((k / exact - 1.0).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn symmetric_in_order() {
        assert_eq!(bessel_k(-1.0, 0.7).unwrap(), bessel_k(1.0, 0.7).unwrap());
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_k(1.0, -2.0).is_err());
    }
}
