//! Photon statistics of the hypergeometric states: normally ordered
//! moments, `⟨N⟩`, `⟨N²⟩`, the Mandel parameter, Monte-Carlo sampling and
//! thermal moments.

mod sampling;
mod thermal;

pub use sampling::{sample_photon_counts, summarize_counts, SampleSummary, SAMPLE_CHUNK, SAMPLE_TAIL};
pub use thermal::{
    mean_occupation, thermal_normal_moment, thermal_partition, thermal_raw_moment, ThermalSpec,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::special::{hyper_part, ln_factorial, ln_pochhammer, SeriesPart, TERM_CAP};
use crate::states::{Parity, StateSpec, STATE_TOL};

/// Allowed disagreement between the reduced Mandel form and the definition.
pub const MANDEL_CROSS_CHECK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MandelResult {
    pub q_value: f64,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub x: f64,
}

/// Part of the series obtained after `k` derivatives of the parity
/// normalizer (`C' ∝ S`, `S' ∝ C`).
fn derived_part(parity: Parity, k: u32) -> SeriesPart {
    let p = if k.is_multiple_of(2) { parity } else { parity.opposite() };
    p.part()
}

/// `d^k/dx^k` of the normalizer of `parity`, via
/// `(d/dx)^k F(a;b;x) = Π(a)_k/Π(b)_k · F(a+k;b+k;x)` and its even/odd
/// counterparts.
fn normalizer_derivative(params: &ParamSet, parity: Parity, x: f64, k: u32) -> Result<f64> {
    let shifted = params.shifted(f64::from(k));
    let value = hyper_part(&shifted, x, derived_part(parity, k), STATE_TOL)?.value;
    Ok(params.pochhammer_ratio(k) * value)
}

/// `⟨(a†)^s a^r⟩` by direct summation of
/// `z̄^s z^r / N · Σ_k sqrt(A(k+r) A(k+s)) x^k / k!`, `A(n) = Π(a)_n/Π(b)_n`,
/// over the `k` for which both `k+r` and `k+s` are populated levels.
pub fn expect_adag_s_a_r(state: &StateSpec, s: u32, r: u32) -> Result<Complex64> {
    let parity = state.parity();
    if parity != Parity::Full && (s + r) % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let params = state.params();
    let x = state.x();
    let norm = state.normalizer()?.value;
    let (s_us, r_us) = (s as usize, r as usize);
    let step = if parity == Parity::Full { 1 } else { 2 };
    let k0 = (0..2).find(|&k| parity.allows(k + r_us)).unwrap_or(0);

    let ln_a = |n: u64| -> Result<f64> {
        let mut v = 0.0;
        for &a in params.a() {
            v += ln_pochhammer(a, n)?;
        }
        for &b in params.b() {
            v -= ln_pochhammer(b, n)?;
        }
        Ok(v)
    };
    let ratio_a = |n: usize| -> f64 {
        let nf = n as f64;
        let num: f64 = params.a().iter().map(|a| a + nf).product();
        let den: f64 = params.b().iter().map(|b| b + nf).product();
        num / den
    };

    let sum = if x == 0.0 {
        if k0 == 0 {
            (0.5 * (ln_a(r as u64)? + ln_a(s as u64)?)).exp()
        } else {
            0.0
        }
    } else {
        let ln_t0 = 0.5 * (ln_a((k0 + r_us) as u64)? + ln_a((k0 + s_us) as u64)?)
            - ln_factorial(k0 as u64)
            + k0 as f64 * x.ln();
        let mut t = ln_t0.exp();
        let mut sum = 0.0;
        let mut small_run = 0;
        let mut k = k0;
        let mut converged = false;
        while k < TERM_CAP {
            sum += t;
            let mut next = t;
            for j in k..k + step {
                next *= x / (j as f64 + 1.0) * (ratio_a(j + r_us) * ratio_a(j + s_us)).sqrt();
            }
            if !next.is_finite() {
                return Err(Error::Overflow(format!("moment series overflowed at k = {k}")));
            }
            if next < STATE_TOL * sum {
                small_run += 1;
            } else {
                small_run = 0;
            }
            let q = if t > 0.0 { next / t } else { 0.0 };
            if small_run >= 3 && q < 1.0 && next * q / (1.0 - q) < STATE_TOL * sum {
                converged = true;
                sum += next;
                break;
            }
            t = next;
            k += step;
        }
        if !converged {
            return Err(Error::NonConvergence { terms: TERM_CAP, last_term: t });
        }
        sum
    };
    let z = state.z();
    Ok(z.conj().powu(s) * z.powu(r) * (sum / norm))
}

/// `⟨N⟩ = x · N'(x) / N(x)` for the parity normalizer `N`.
pub fn expect_n(state: &StateSpec) -> Result<f64> {
    let x = state.x();
    if x == 0.0 {
        return Ok(0.0);
    }
    let norm = state.normalizer()?.value;
    Ok(x * normalizer_derivative(state.params(), state.parity(), x, 1)? / norm)
}

/// `⟨(a†)² a²⟩ = x² N''(x) / N(x)`.
fn expect_second_factorial(state: &StateSpec) -> Result<f64> {
    let x = state.x();
    if x == 0.0 {
        return Ok(0.0);
    }
    let norm = state.normalizer()?.value;
    Ok(x * x * normalizer_derivative(state.params(), state.parity(), x, 2)? / norm)
}

/// `⟨N²⟩ = ⟨(a†)² a²⟩ + ⟨N⟩`.
pub fn expect_n2(state: &StateSpec) -> Result<f64> {
    Ok(expect_second_factorial(state)? + expect_n(state)?)
}

/// Mandel parameter through the reduced two-term form
/// `Q = x·N''/N' − x·N'/N`, cross-checked against the definition.
pub fn mandel_q(state: &StateSpec) -> Result<MandelResult> {
    let x = state.x();
    if x == 0.0 {
        return Err(Error::Degenerate(
            "<N> vanishes at z = 0; the Mandel parameter is 0/0 there".into(),
        ));
    }
    let params = state.params();
    let parity = state.parity();
    let n0 = state.normalizer()?.value;
    let n1 = normalizer_derivative(params, parity, x, 1)?;
    let n2 = normalizer_derivative(params, parity, x, 2)?;
    let q_value = x * (n2 / n1 - n1 / n0);

    let mean_n = x * n1 / n0;
    let mean_n2 = x * x * n2 / n0 + mean_n;
    let definition = (mean_n2 - mean_n * mean_n) / mean_n - 1.0;
    let scale = (mean_n2 / mean_n).max(1.0);
    if (definition - q_value).abs() > MANDEL_CROSS_CHECK * scale {
        return Err(Error::Consistency(format!(
            "reduced Mandel form {q_value} disagrees with the definition {definition} at x = {x}"
        )));
    }
    Ok(MandelResult { q_value, mean_n, mean_n2, x })
}

/// `lim_{x→0⁺} Q`: even states start super-Poissonian at 1, odd states at
/// −1 (the state tends to `|1⟩`), full states at 0.
pub fn mandel_limit_at_origin(parity: Parity) -> f64 {
    match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
        Parity::Full => 0.0,
    }
}
