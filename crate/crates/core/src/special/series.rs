//! Generalized hypergeometric series `pFq` and its even/odd parts.
//!
//! All three are summed with one engine: terms are built by the ratio
//! recurrence `t_{n+1} = t_n · x · Π(a_i+n) / (Π(b_j+n)·(n+1))` and the sum
//! stops once three consecutive included terms satisfy
//! `|t| < tol·max(1, |partial|)` *and* a tail bound derived from monotone
//! ratio factors is below the same threshold.

use serde::{Deserialize, Serialize};

use super::gamma::{ln_factorial, ln_pochhammer};
use crate::error::{Error, Result};
use crate::params::ParamSet;

pub const DEFAULT_SERIES_TOL: f64 = 1e-12;
pub const TERM_CAP: usize = 10_000;

/// A series value together with its accuracy contract.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: f64,
    /// Estimated bound on the modulus of the discarded tail.
    pub abs_error_estimate: f64,
    pub terms_used: usize,
}

/// Which indices of the power series are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesPart {
    All,
    Even,
    Odd,
}

impl SeriesPart {
    fn includes(self, n: usize) -> bool {
        match self {
            SeriesPart::All => true,
            SeriesPart::Even => n.is_multiple_of(2),
            SeriesPart::Odd => n % 2 == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    /// `p < q+1`: converges for every x.
    Entire,
    /// `p = q+1`: converges for `|x| < 1`.
    UnitDisc,
    /// `p > q+1`: converges only at x = 0.
    Divergent,
}

/// Behaviour of a `p = q+1` series on the circle `|x| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryBehaviour {
    Absolute,
    ConditionalExceptOne,
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceDomain {
    pub kind: DomainKind,
    /// `Σ a_i − Σ b_j`.
    pub eta: f64,
}

impl ConvergenceDomain {
    pub fn contains(&self, x: f64) -> bool {
        match self.kind {
            DomainKind::Entire => x.is_finite(),
            DomainKind::UnitDisc => x.abs() < 1.0,
            DomainKind::Divergent => x == 0.0,
        }
    }

    /// Boundary behaviour for unit-disc series. The evaluators never sum on
    /// the boundary; this is informational.
    pub fn boundary(&self) -> Option<BoundaryBehaviour> {
        match self.kind {
            DomainKind::UnitDisc if self.eta < 0.0 => Some(BoundaryBehaviour::Absolute),
            DomainKind::UnitDisc if self.eta < 1.0 => Some(BoundaryBehaviour::ConditionalExceptOne),
            DomainKind::UnitDisc => Some(BoundaryBehaviour::Divergent),
            _ => None,
        }
    }
}

pub fn convergence_domain(params: &ParamSet) -> ConvergenceDomain {
    let (p, q) = (params.p(), params.q());
    let kind = match p.cmp(&(q + 1)) {
        std::cmp::Ordering::Less => DomainKind::Entire,
        std::cmp::Ordering::Equal => DomainKind::UnitDisc,
        std::cmp::Ordering::Greater => DomainKind::Divergent,
    };
    let eta = params.a().iter().sum::<f64>() - params.b().iter().sum::<f64>();
    ConvergenceDomain { kind, eta }
}

/// Ratio-recurrence series with arbitrary real parameters. Callers that hand
/// in non-positive parameters are responsible for avoiding denominator poles.
#[derive(Debug, Clone)]
pub(crate) struct RatioSeries<'a> {
    pub num: &'a [f64],
    pub den: &'a [f64],
    pub x: f64,
    pub part: SeriesPart,
}

impl RatioSeries<'_> {
    pub(crate) fn ratio(&self, n: usize) -> f64 {
        let nf = n as f64;
        let num: f64 = self.num.iter().map(|a| a + nf).product();
        let den: f64 = self.den.iter().map(|b| b + nf).product();
        self.x * num / (den * (nf + 1.0))
    }

    /// Bound on `|t_{k+1}/t_k|` valid for every `k ≥ n0`, or infinity when no
    /// finite bound below 1 is available yet.
    fn ratio_bound(&self, n0: usize) -> f64 {
        let n0f = n0 as f64;
        let mut dens: Vec<f64> = self.den.to_vec();
        dens.push(1.0);
        if self.num.len() > dens.len() {
            return f64::INFINITY;
        }
        let mut bound = self.x.abs();
        for (i, a) in self.num.iter().enumerate() {
            let (na, nd) = (a + n0f, dens[i] + n0f);
            if na <= 0.0 || nd <= 0.0 {
                return f64::INFINITY;
            }
            bound *= (na / nd).max(1.0);
        }
        for d in &dens[self.num.len()..] {
            let nd = d + n0f;
            if nd <= 0.0 {
                return f64::INFINITY;
            }
            bound /= nd;
        }
        bound
    }

    pub(crate) fn tail_bound(&self, next_term_abs: f64, next_index: usize) -> f64 {
        let r = self.ratio_bound(next_index);
        if r >= 1.0 {
            return f64::INFINITY;
        }
        // next_term is t_{next_index}; whether it is included depends on part
        match self.part {
            SeriesPart::All => next_term_abs / (1.0 - r),
            _ => {
                if self.part.includes(next_index) {
                    next_term_abs / (1.0 - r * r)
                } else {
                    next_term_abs * r / (1.0 - r * r)
                }
            }
        }
    }

    fn terminates_at(&self, n: usize) -> bool {
        self.num.iter().any(|a| a + n as f64 == 0.0)
    }

    pub fn sum(&self, tol: f64) -> Result<SeriesResult> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        if !self.x.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {}", self.x)));
        }
        let mut term = 1.0f64;
        let mut sum = 0.0f64;
        let mut used = 0usize;
        let mut small_run = 0usize;
        for n in 0..TERM_CAP {
            if self.part.includes(n) {
                sum += term;
                used += 1;
                if term.abs() < tol * sum.abs().max(1.0) {
                    small_run += 1;
                } else {
                    small_run = 0;
                }
            }
            if self.x == 0.0 || self.terminates_at(n) {
                return Ok(SeriesResult { value: sum, abs_error_estimate: 0.0, terms_used: used.max(1) });
            }
            term *= self.ratio(n);
            if !term.is_finite() || !sum.is_finite() {
                return Err(Error::Overflow(format!(
                    "series term overflowed at n = {n} (x = {})",
                    self.x
                )));
            }
            if small_run >= 3 {
                let tail = self.tail_bound(term.abs(), n + 1);
                if tail <= tol * sum.abs().max(1.0) {
                    return Ok(SeriesResult { value: sum, abs_error_estimate: tail, terms_used: used });
                }
            }
        }
        Err(Error::NonConvergence { terms: TERM_CAP, last_term: term.abs() })
    }
}

fn check_domain(params: &ParamSet, x: f64) -> Result<()> {
    let dom = convergence_domain(params);
    if dom.contains(x) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "x = {x} lies outside the convergence domain ({:?}) of the {}F{} series",
            dom.kind,
            params.p(),
            params.q()
        )))
    }
}

/// Sum of the selected part of `pFq(a; b; x)`.
pub fn hyper_part(params: &ParamSet, x: f64, part: SeriesPart, tol: f64) -> Result<SeriesResult> {
    check_domain(params, x)?;
    RatioSeries { num: params.a(), den: params.b(), x, part }.sum(tol)
}

/// `pFq(a_1..a_p; b_1..b_q; x) = Σ (a)_n/(b)_n x^n/n!`.
pub fn hyper_pfq(params: &ParamSet, x: f64, tol: f64) -> Result<SeriesResult> {
    hyper_part(params, x, SeriesPart::All, tol)
}

/// Even-index part `pCq`: `Σ (a)_{2n}/(b)_{2n} x^{2n}/(2n)!`.
pub fn hyper_even_pcq(params: &ParamSet, x: f64, tol: f64) -> Result<SeriesResult> {
    hyper_part(params, x, SeriesPart::Even, tol)
}

/// Odd-index part `pSq`: `Σ (a)_{2n+1}/(b)_{2n+1} x^{2n+1}/(2n+1)!`.
pub fn hyper_odd_psq(params: &ParamSet, x: f64, tol: f64) -> Result<SeriesResult> {
    hyper_part(params, x, SeriesPart::Odd, tol)
}

/// The n-th series term evaluated directly in log domain:
/// `exp(Σ ln(a_i)_n − Σ ln(b_j)_n − ln n! + n ln|x|)` with the sign of `x^n`.
pub fn series_term_direct(params: &ParamSet, x: f64, n: u64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut ln = n as f64 * x.abs().ln() - ln_factorial(n);
    for &a in params.a() {
        ln += ln_pochhammer(a, n)?;
    }
    for &b in params.b() {
        ln -= ln_pochhammer(b, n)?;
    }
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * ln.exp())
}

/// Terms `t_0..t_{count-1}` built by the ratio recurrence.
pub fn series_terms_recurrence(params: &ParamSet, x: f64, count: usize) -> Vec<f64> {
    let s = RatioSeries { num: params.a(), den: params.b(), x, part: SeriesPart::All };
    let mut out = Vec::with_capacity(count);
    let mut t = 1.0;
    for n in 0..count {
        out.push(t);
        t *= s.ratio(n);
    }
    out
}
