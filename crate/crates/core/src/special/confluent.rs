//! Tricomi confluent function `U(a, b, x)` and the Whittaker function
//! `W_{κ,μ}(x) = e^{−x/2} x^{μ+1/2} U(μ−κ+1/2, 1+2μ, x)`.

use super::gamma::{gamma, ln_gamma, recip_gamma};
use super::series::{RatioSeries, SeriesPart};
use crate::error::{Error, Result};
use crate::quad::integrate_half_line;

pub const DEFAULT_SPECIAL_TOL: f64 = 1e-10;

/// `ln U(a,b,x)` for `a > 0` from the integral representation.
///
/// With `u = xt`,
/// `U = x^{1−b}/Γ(a) ∫_0^∞ e^{−u} u^{a−1} (u+x)^{b−a−1} du`, whose mass sits
/// at `u = O(1)` when `x ≥ 1` or `b > 1`. Otherwise (small `x`, `b ≤ 1`) the
/// unscaled `U = 1/Γ(a) ∫_0^∞ e^{−xt} t^{a−1} (1+t)^{b−a−1} dt` is used.
fn ln_hyperu_integral(a: f64, b: f64, x: f64) -> Result<f64> {
    let expo = b - a - 1.0;
    let tol = DEFAULT_SPECIAL_TOL * 1e-2;
    if x >= 1.0 || b > 1.0 {
        let shift = expo * x.ln_1p();
        let integrand = |u: f64| (-u + (a - 1.0) * u.ln() + expo * (u + x).ln() - shift).exp();
        let r = integrate_half_line(integrand, tol)?;
        Ok(r.value.ln() + shift + (1.0 - b) * x.ln() - ln_gamma(a))
    } else {
        let integrand = |t: f64| (-x * t + (a - 1.0) * t.ln() + expo * t.ln_1p()).exp();
        let r = integrate_half_line(integrand, tol)?;
        Ok(r.value.ln() - ln_gamma(a))
    }
}

/// `U(a, b, x)` as `(ln|U|, sign)`.
pub(crate) fn ln_hyperu(a: f64, b: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("U(a,b,x) requires x > 0, got {x}")));
    }
    if a == 0.0 {
        return Ok((0.0, 1.0));
    }
    if a > 0.0 {
        return Ok((ln_hyperu_integral(a, b, x)?, 1.0));
    }
    let kummer = a - b + 1.0;
    if kummer > 0.0 {
        return Ok(((1.0 - b) * x.ln() + ln_hyperu_integral(kummer, 2.0 - b, x)?, 1.0));
    }
    let steps = (-a).floor() as usize + 1;
    let top = a + steps as f64;
    let scale = ln_hyperu_integral(top, b, x)?;
    let mut upper = (ln_hyperu_integral(top + 1.0, b, x)? - scale).exp();
    let mut current = 1.0;
    let mut alpha = top;
    for _ in 0..steps {
        // U(α−1) = −(b − 2α − x) U(α) − α(α − b + 1) U(α+1)
        let lower = -(b - 2.0 * alpha - x) * current - alpha * (alpha - b + 1.0) * upper;
        upper = current;
        current = lower;
        alpha -= 1.0;
    }
    if !current.is_finite() {
        return Err(Error::ParameterRange(format!("U({a}, {b}, {x}) could not be evaluated")));
    }
    Ok((scale + current.abs().ln(), current.signum()))
}

/// `U(a, b, x)` for `x > 0`.
///
/// Uses the integral representation when `a > 0`, Kummer's transformation
/// `U(a,b,x) = x^{1−b} U(a−b+1, 2−b, x)` when that makes the first parameter
/// positive, and otherwise downward recurrence in `a` from two integral
/// evaluations (stable because `U` is the recessive solution as `a` grows).
pub fn hyperu(a: f64, b: f64, x: f64) -> Result<f64> {
    let (ln, sign) = ln_hyperu(a, b, x)?;
    Ok(sign * ln.exp())
}

/// `U(a,b,x)` from two Kummer `M` series,
/// `U = Γ(1−b)/Γ(a−b+1) M(a,b,x) + Γ(b−1)/Γ(a) x^{1−b} M(a−b+1,2−b,x)`.
///
/// An independent route to [`hyperu`] for non-integer `b`; cancellation
/// limits it to moderate `x` (roughly `x ≤ 10`).
pub fn hyperu_series(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("U(a,b,x) requires x > 0, got {x}")));
    }
    if (b - b.round()).abs() < 1e-9 {
        return Err(Error::ParameterRange(format!("series route needs non-integer b, got {b}")));
    }
    let tol = 1e-15;
    let m1 = RatioSeries { num: &[a], den: &[b], x, part: SeriesPart::All }.sum(tol)?.value;
    let m2 = RatioSeries { num: &[a - b + 1.0], den: &[2.0 - b], x, part: SeriesPart::All }
        .sum(tol)?
        .value;
    Ok(gamma(1.0 - b) * recip_gamma(a - b + 1.0) * m1
        + gamma(b - 1.0) * recip_gamma(a) * x.powf(1.0 - b) * m2)
}

/// `W_{κ,μ}(x)` as `(ln|W|, sign)`.
pub(crate) fn ln_whittaker_w(kappa: f64, mu: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("W(κ,μ,x) requires x > 0, got {x}")));
    }
    let (ln_u, sign) = ln_hyperu(mu - kappa + 0.5, 1.0 + 2.0 * mu, x)?;
    Ok((-0.5 * x + (mu + 0.5) * x.ln() + ln_u, sign))
}

/// Whittaker `W_{κ,μ}(x)` for `x > 0`.
pub fn whittaker_w(kappa: f64, mu: f64, x: f64) -> Result<f64> {
    let (ln, sign) = ln_whittaker_w(kappa, mu, x)?;
    let out = sign * ln.exp();
    if !out.is_finite() {
        return Err(Error::Overflow(format!("W_{{{kappa},{mu}}}({x}) exceeds the f64 range")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_with_unit_first_parameter() {
        // U(1,1,x) = e^x E_1(x); U(a, a+1, x) = x^{-a}
        for &x in &[0.01, 0.5, 3.0, 25.0] {
            let u = hyperu(0.7, 1.7, x).unwrap();
            assert!((u * x.powf(0.7) - 1.0).abs() < 1e-11, "x = {x}");
        }
    }

    #[test]
    fn zero_first_parameter() {
        assert_eq!(hyperu(0.0, 2.3, 1.1).unwrap(), 1.0);
    }

    #[test]
    fn negative_integer_first_parameter_is_polynomial() {
        // U(-1, b, x) = x - b
        let u = hyperu(-1.0, 3.5, 0.8).unwrap();
        assert!((u - (0.8 - 3.5)).abs() < 1e-10);
        // U(-2, b, x) = x^2 - 2(b+1)x + b(b+1)
        let (b, x) = (2.5f64, 1.3f64);
        let exact = x * x - 2.0 * (b + 1.0) * x + b * (b + 1.0);
        assert!((hyperu(-2.0, b, x).unwrap() - exact).abs() < 1e-9);
    }

    #[test]
    fn whittaker_reduces_to_exponential() {
        // W_{κ, κ-1/2}(x) = e^{-x/2} x^κ
        for &(k, x) in &[(0.3, 2.0), (1.7, 0.4), (-0.6, 9.0)] {
            let w = whittaker_w(k, k - 0.5, x).unwrap();
            let exact = (-0.5 * x).exp() * x.powf(k);
            assert!((w / exact - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(whittaker_w(0.1, 0.2, 0.0).is_err());
        assert!(hyperu(1.0, 1.0, -1.0).is_err());
    }
}
