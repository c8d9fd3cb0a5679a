//! Generalized hypergeometric states `|p,q,z⟩` and their even/odd
//! projections, represented through their Fock coefficients
//! `c_n = z^n / sqrt(ρ(n) · N(x))`, `x = |z|²`, where the normalizer `N` is
//! `pFq`, `pCq` or `pSq` according to parity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::special::{
    convergence_domain, hyper_part, ln_factorial, ln_pochhammer, RatioSeries, SeriesPart,
    SeriesResult,
};

/// Series tolerance used for normalizers inside this module.
pub const STATE_TOL: f64 = 1e-14;
pub const TRUNCATION_CAP: usize = 5_000;
const TRUNCATION_REL: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Full,
    Even,
    Odd,
}

impl Parity {
    pub fn part(self) -> SeriesPart {
        match self {
            Parity::Full => SeriesPart::All,
            Parity::Even => SeriesPart::Even,
            Parity::Odd => SeriesPart::Odd,
        }
    }

    /// Whether Fock level `n` can be populated.
    pub fn allows(self, n: usize) -> bool {
        match self {
            Parity::Full => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }

    pub fn opposite(self) -> Parity {
        match self {
            Parity::Full => Parity::Full,
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Parity::Full),
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::ParameterRange(format!("unknown parity '{other}'"))),
        }
    }
}

/// `|p,q,z⟩`, `|p,q,z⟩_e` or `|p,q,z⟩_o`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    params: ParamSet,
    parity: Parity,
    z: Complex64,
}

impl StateSpec {
    pub fn new(params: ParamSet, parity: Parity, z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("label z = {z} is not finite")));
        }
        let x = z.norm_sqr();
        let dom = convergence_domain(&params);
        if !dom.contains(x) {
            return Err(Error::Domain(format!(
                "|z|^2 = {x} lies outside the convergence domain ({:?}) of {}F{}",
                dom.kind,
                params.p(),
                params.q()
            )));
        }
        if parity == Parity::Odd && x == 0.0 {
            return Err(Error::Degenerate("the odd state is not normalizable at z = 0".into()));
        }
        Ok(StateSpec { params, parity, z })
    }

    /// State with a real, non-negative label `z = sqrt(x)`.
    pub fn with_x(params: ParamSet, parity: Parity, x: f64) -> Result<Self> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("x = |z|^2 must be non-negative, got {x}")));
        }
        Self::new(params, parity, Complex64::new(x.sqrt(), 0.0))
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn x(&self) -> f64 {
        self.z.norm_sqr()
    }

    /// `pFq`, `pCq` or `pSq` evaluated at `x = |z|²`.
    pub fn normalizer(&self) -> Result<SeriesResult> {
        hyper_part(&self.params, self.x(), self.parity.part(), STATE_TOL)
    }

    fn series(&self) -> RatioSeries<'_> {
        RatioSeries { num: self.params.a(), den: self.params.b(), x: self.x(), part: self.parity.part() }
    }
}

/// `ρ(n) = n! Π(b_j)_n / Π(a_i)_n` in log domain.
pub fn ln_rho(params: &ParamSet, n: u64) -> Result<f64> {
    let mut ln = ln_factorial(n);
    for &b in params.b() {
        ln += ln_pochhammer(b, n)?;
    }
    for &a in params.a() {
        ln -= ln_pochhammer(a, n)?;
    }
    Ok(ln)
}

pub fn rho(params: &ParamSet, n: u64) -> Result<f64> {
    let ln = ln_rho(params, n)?;
    if ln > f64::MAX.ln() {
        return Err(Error::Overflow(format!("ln rho({n}) = {ln} exceeds the f64 range")));
    }
    Ok(ln.exp())
}

/// Truncated Fock expansion of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockAmplitudes {
    pub n_max: usize,
    /// `c_0..=c_{n_max}`.
    pub amplitudes: Vec<Complex64>,
    /// Upper bound on `Σ_{n > n_max} |c_n|²`; equals 1 when no bound is
    /// available at this truncation.
    pub tail_mass_bound: f64,
}

impl FockAmplitudes {
    pub fn captured_mass(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficients of `â|ψ⟩` on levels `0..n_max`: `(âψ)_n = sqrt(n+1) c_{n+1}`.
    pub fn lowered(&self) -> Vec<Complex64> {
        self.amplitudes
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * (n as f64).sqrt())
            .collect()
    }
}

/// Unnormalized terms `x^n/ρ(n)` for `n = 0..=n_max`, with the tail bound
/// on the parity-selected remainder.
fn weighted_terms(state: &StateSpec, n_max: usize) -> (Vec<f64>, f64) {
    let s = state.series();
    let mut terms = Vec::with_capacity(n_max + 1);
    let mut t = 1.0;
    for n in 0..=n_max {
        terms.push(t);
        t *= s.ratio(n);
    }
    let tail = if state.x() == 0.0 { 0.0 } else { s.tail_bound(t.abs(), n_max + 1) };
    (terms, tail)
}

pub fn fock_amplitudes(state: &StateSpec, n_max: usize) -> Result<FockAmplitudes> {
    let norm = state.normalizer()?;
    let (terms, tail) = weighted_terms(state, n_max);
    let theta = state.z.arg();
    let amplitudes = terms
        .iter()
        .enumerate()
        .map(|(n, &t)| {
            if state.parity.allows(n) {
                Complex64::from_polar((t / norm.value).sqrt(), n as f64 * theta)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let tail_mass_bound = ((tail + norm.abs_error_estimate) / norm.value).min(1.0);
    Ok(FockAmplitudes { n_max, amplitudes, tail_mass_bound })
}

/// Smallest allowed level whose weight `x^n/ρ(n)` is below `1e-16` of the
/// partial normalizer (past the peak of the distribution), capped at
/// [`TRUNCATION_CAP`].
pub fn default_truncation(state: &StateSpec) -> usize {
    let s = state.series();
    let mut t = 1.0;
    let mut partial = 0.0;
    for n in 0..TRUNCATION_CAP {
        let r = s.ratio(n);
        if state.parity.allows(n) {
            partial += t;
            if n > 0 && r < 1.0 && t < TRUNCATION_REL * partial {
                return n;
            }
        }
        if state.x() == 0.0 && n > 0 {
            return n;
        }
        t *= r;
    }
    TRUNCATION_CAP
}

/// Probability of finding `n` quanta.
pub fn photon_distribution(state: &StateSpec, n: u64) -> Result<f64> {
    if !state.parity.allows(n as usize) {
        return Ok(0.0);
    }
    let x = state.x();
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let norm = state.normalizer()?.value;
    Ok((n as f64 * x.ln() - ln_rho(&state.params, n)? - norm.ln()).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    pub value: Complex64,
    /// Bound on the contribution of levels above the truncation.
    pub tail_bound: f64,
}

/// `⟨s1|s2⟩` summed over Fock levels `0..=n_max`.
pub fn overlap(s1: &StateSpec, s2: &StateSpec, n_max: usize) -> Result<Overlap> {
    if s1.params != s2.params {
        return Err(Error::MismatchedParams);
    }
    let disjoint = matches!(
        (s1.parity, s2.parity),
        (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even)
    );
    if disjoint {
        return Ok(Overlap { value: Complex64::new(0.0, 0.0), tail_bound: 0.0 });
    }
    let c1 = fock_amplitudes(s1, n_max)?;
    let c2 = fock_amplitudes(s2, n_max)?;
    let value = c1.amplitudes.iter().zip(&c2.amplitudes).map(|(a, b)| a.conj() * b).sum();
    Ok(Overlap { value, tail_bound: (c1.tail_mass_bound * c2.tail_mass_bound).sqrt() })
}

/// `â|ψ⟩ = prefactor · |image⟩` for a parity state.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilation {
    pub prefactor: Complex64,
    /// Opposite-parity state with every parameter shifted by +1; `None`
    /// when the prefactor vanishes (`â` annihilates the vacuum).
    pub image: Option<StateSpec>,
}

pub fn annihilate(state: &StateSpec) -> Result<Annihilation> {
    if state.parity == Parity::Full {
        return Err(Error::ParityRequired);
    }
    let x = state.x();
    if x == 0.0 {
        return Ok(Annihilation { prefactor: Complex64::new(0.0, 0.0), image: None });
    }
    let shifted = state.params.shifted(1.0);
    let image_parity = state.parity.opposite();
    let image = StateSpec::new(shifted.clone(), image_parity, state.z)?;
    let own = state.normalizer()?.value;
    let other = image.normalizer()?.value;
    let ratio = state.params.pochhammer_ratio(1);
    let prefactor = state.z * (ratio * other / own).sqrt();
    Ok(Annihilation { prefactor, image: Some(image) })
}
