//! Resolution-of-identity weights and the power-moment problem
//! `∫ x^n ω(x) dx = ρ(n)`.
//!
//! Five closed forms are available:
//!
//! | tag | (p,q) | ω(x) | support |
//! |---|---|---|---|
//! | `exp_00` | (0,0) | `e^{−x}` | `[0,∞)` |
//! | `besselK_01` | (0,1) | `2/Γ(b) · x^{(b−1)/2} K_{b−1}(2√x)` | `[0,∞)` |
//! | `beta_10` | (1,0) | `(a−1)(1−x)^{a−2}` | `[0,1]` |
//! | `whittaker_11` | (1,1) | `Γ(a)/Γ(b) · x^{b/2−1} e^{−x/2} W_{1+b/2−a,(b−1)/2}(x)` | `[0,∞)` |
//! | `gauss2F1_21` | (2,1) | `Γ(a₁)Γ(a₂)/(Γ(b)Γ(s−1)) (1−x)^{s−2} ₂F₁(a₁−b, a₂−b; s−1; 1−x)`, `s = a₁+a₂−b` | `[0,1]` |
//!
//! Every other `(p,q)` needs a Meijer-G weight, which is not evaluated.

use std::cell::RefCell;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::params::ParamSet;
use crate::quad::{integrate_half_line, integrate_unit};
use crate::special::{gauss_2f1_split, hyper_part, ln_bessel_k, ln_gamma, ln_whittaker_w};
use crate::states::{ln_rho, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightTag {
    #[serde(rename = "exp_00")]
    Exp00,
    #[serde(rename = "besselK_01")]
    BesselK01,
    #[serde(rename = "beta_10")]
    Beta10,
    #[serde(rename = "whittaker_11")]
    Whittaker11,
    #[serde(rename = "gauss2F1_21")]
    Gauss2F1_21,
}

impl WeightTag {
    pub fn name(self) -> &'static str {
        match self {
            WeightTag::Exp00 => "exp_00",
            WeightTag::BesselK01 => "besselK_01",
            WeightTag::Beta10 => "beta_10",
            WeightTag::Whittaker11 => "whittaker_11",
            WeightTag::Gauss2F1_21 => "gauss2F1_21",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// `[0, 1]`
    Unit,
    /// `[0, ∞)`
    HalfLine,
}

impl Support {
    pub fn upper(self) -> f64 {
        match self {
            Support::Unit => 1.0,
            Support::HalfLine => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightCase {
    pub tag: WeightTag,
    pub params: ParamSet,
    pub support: Support,
}

/// Which orders enter a moment report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentFilter {
    All,
    Even,
    Odd,
}

/// Classifies `params` into one of the closed-form cases.
pub fn weight_case(params: &ParamSet) -> Result<WeightCase> {
    let (a, b) = (params.a(), params.b());
    let (tag, support) = match (params.p(), params.q()) {
        (0, 0) => (WeightTag::Exp00, Support::HalfLine),
        (0, 1) => (WeightTag::BesselK01, Support::HalfLine),
        (1, 0) => {
            if !(a[0] > 1.0) {
                return Err(Error::ParameterRange(format!(
                    "beta_10 needs a > 1 for (a-1)(1-x)^(a-2) to be a finite measure, got a = {}",
                    a[0]
                )));
            }
            (WeightTag::Beta10, Support::Unit)
        }
        (1, 1) => {
            if !(a[0] >= 1.0 || a[0] >= b[0]) {
                return Err(Error::ParameterRange(format!(
                    "whittaker_11 needs a >= 1 or a >= b for a nonnegative weight, got a = {}, b = {}",
                    a[0], b[0]
                )));
            }
            (WeightTag::Whittaker11, Support::HalfLine)
        }
        (2, 1) => {
            let s = a[0] + a[1] - b[0];
            if !(s > 1.0) {
                return Err(Error::ParameterRange(format!(
                    "gauss2F1_21 needs a1 + a2 - b > 1, got {s}"
                )));
            }
            (WeightTag::Gauss2F1_21, Support::Unit)
        }
        (p, q) => return Err(Error::UnsupportedCase { p, q }),
    };
    Ok(WeightCase { tag, params: params.clone(), support })
}

/// `ln ω` at `x`, with `cx = 1 − x` supplied separately on `[0,1]`.
fn ln_weight(case: &WeightCase, x: f64, cx: f64) -> Result<f64> {
    let (a, b) = (case.params.a(), case.params.b());
    match case.tag {
        WeightTag::Exp00 => Ok(-x),
        WeightTag::BesselK01 => {
            let b = b[0];
            let nu = b - 1.0;
            if x == 0.0 {
                return if nu > 0.0 {
                    Ok(-nu.ln())
                } else {
                    Err(Error::Domain(format!("besselK_01 weight is singular at x = 0 for b = {b}")))
                };
            }
            Ok(std::f64::consts::LN_2 - ln_gamma(b) + 0.5 * nu * x.ln() + ln_bessel_k(nu, 2.0 * x.sqrt())?)
        }
        WeightTag::Beta10 => {
            let a = a[0];
            if cx == 0.0 && a < 2.0 {
                return Err(Error::Domain(format!("beta_10 weight is singular at x = 1 for a = {a}")));
            }
            if cx == 0.0 && a > 2.0 {
                return Ok(f64::NEG_INFINITY);
            }
            Ok((a - 1.0).ln() + (a - 2.0) * cx.ln())
        }
        WeightTag::Whittaker11 => {
            let (a, b) = (a[0], b[0]);
            if x == 0.0 {
                return Err(Error::Domain("whittaker_11 weight is evaluated for x > 0 only".into()));
            }
            let (ln_w, sign) = ln_whittaker_w(1.0 + 0.5 * b - a, 0.5 * (b - 1.0), x)?;
            if sign < 0.0 {
                return Err(Error::Domain(format!("whittaker_11 weight is negative at x = {x}")));
            }
            Ok(ln_gamma(a) - ln_gamma(b) + (0.5 * b - 1.0) * x.ln() - 0.5 * x + ln_w)
        }
        WeightTag::Gauss2F1_21 => {
            let (a1, a2, b) = (a[0], a[1], b[0]);
            let s = a1 + a2 - b;
            if cx == 0.0 {
                return Err(Error::Domain("gauss2F1_21 weight is evaluated for x < 1 only".into()));
            }
            let f = if x == 0.0 {
                return Err(Error::Domain("gauss2F1_21 weight is evaluated for x > 0 only".into()));
            } else {
                gauss_2f1_split(a1 - b, a2 - b, s - 1.0, cx, x)?
            };
            if f < 0.0 {
                return Err(Error::Domain(format!("gauss2F1_21 weight is negative at x = {x}")));
            }
            Ok(ln_gamma(a1) + ln_gamma(a2) - ln_gamma(b) - ln_gamma(s - 1.0) + (s - 2.0) * cx.ln() + f.ln())
        }
    }
}

fn check_support(case: &WeightCase, x: f64) -> Result<()> {
    if !(x >= 0.0 && x <= case.support.upper()) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "x = {x} lies outside the support of the {} weight",
            case.tag.name()
        )));
    }
    Ok(())
}

/// `ω(x)` with the complement `1 − x` passed in (used on `[0,1]`).
pub fn weight_eval_split(case: &WeightCase, x: f64, one_minus_x: f64) -> Result<f64> {
    check_support(case, x)?;
    let v = ln_weight(case, x, one_minus_x)?.exp();
    if !v.is_finite() {
        return Err(Error::Domain(format!("{} weight is not finite at x = {x}", case.tag.name())));
    }
    Ok(v)
}

pub fn weight_eval(case: &WeightCase, x: f64) -> Result<f64> {
    weight_eval_split(case, x, 1.0 - x)
}

/// `W(x) = N(x) ω(x)` where `N` is the parity normalizer (`pFq`, `pCq` or
/// `pSq`) of the case's parameters.
pub fn resolution_weight(case: &WeightCase, parity: Parity, x: f64) -> Result<f64> {
    let w = weight_eval(case, x)?;
    let n = hyper_part(&case.params, x, parity.part(), crate::states::STATE_TOL)?.value;
    Ok(n * w)
}

/// `∫ x^n ω(x) dx` over the support, relative tolerance `tol`.
pub fn quadrature_moment(case: &WeightCase, n: u32, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::ParameterRange(format!("tolerance must be positive, got {tol}")));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let nf = f64::from(n);
    let eval = |x: f64, cx: f64| -> f64 {
        match ln_weight(case, x, cx) {
            Ok(lw) => (nf * x.ln() + lw).exp(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let result = match case.support {
        Support::HalfLine => integrate_half_line(|x| eval(x, 1.0 - x), tol),
        Support::Unit => integrate_unit(eval, tol),
    };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(result?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub n: u32,
    pub target: f64,
    pub value: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub case: WeightTag,
    pub params: ParamSet,
    pub entries: Vec<MomentEntry>,
    pub max_rel_error: f64,
}

impl MomentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,target,value,rel_error\n");
        for e in &self.entries {
            let _ = writeln!(out, "{},{:.16e},{:.16e},{:.16e}", e.n, e.target, e.value, e.rel_error);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn orders(n_max: u32, filter: MomentFilter) -> Vec<u32> {
    match filter {
        MomentFilter::All => (0..=n_max).collect(),
        MomentFilter::Even => (0..=n_max).map(|k| 2 * k).collect(),
        MomentFilter::Odd => (0..=n_max).map(|k| 2 * k + 1).collect(),
    }
}

/// Compares quadrature moments with `ρ(n)`. With the even (odd) filter the
/// orders are `2k` (`2k+1`) for `k = 0..=n_max`; the same weight solves all
/// three problems.
pub fn verify_moments(
    case: &WeightCase,
    n_max: u32,
    tol: f64,
    filter: MomentFilter,
    exec: Execution,
) -> Result<MomentReport> {
    if !(tol > 0.0) {
        return Err(Error::ParameterRange(format!("tolerance must be positive, got {tol}")));
    }
    let quad_tol = (tol * 1e-2).max(1e-13);
    let ns = orders(n_max, filter);
    let rows = map_ordered(exec, &ns, |&n| -> Result<MomentEntry> {
        let target = ln_rho(&case.params, u64::from(n))?.exp();
        let value = quadrature_moment(case, n, quad_tol)?;
        Ok(MomentEntry { n, target, value, rel_error: (value / target - 1.0).abs() })
    });
    let entries = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let max_rel_error = entries.iter().map(|e| e.rel_error).fold(0.0, f64::max);
    Ok(MomentReport { case: case.tag, params: case.params.clone(), entries, max_rel_error })
}
