use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Numerator list `a_1..a_p` and denominator list `b_1..b_q` of a
/// hypergeometric family. Every entry is strictly positive once constructed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ParamSet {
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawParams> for ParamSet {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        ParamSet::new(raw.a, raw.b)
    }
}

impl From<ParamSet> for RawParams {
    fn from(p: ParamSet) -> Self {
        RawParams { a: p.a, b: p.b }
    }
}

impl ParamSet {
    /// Validates positivity of every entry (the first offending entry is
    /// reported).
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        for (i, &v) in a.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveParameter { name: format!("a{}", i + 1), value: v });
            }
        }
        for (j, &v) in b.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveParameter { name: format!("b{}", j + 1), value: v });
            }
        }
        Ok(ParamSet { a, b })
    }

    /// The empty family: `0F0`, i.e. the Glauber coherent state.
    pub fn empty() -> Self {
        ParamSet { a: Vec::new(), b: Vec::new() }
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    /// Every parameter shifted by `k` (used by the derivative identities
    /// `d/dx C(a;b) = (Πa/Πb) S(a+1;b+1)`).
    pub fn shifted(&self, k: f64) -> Self {
        ParamSet {
            a: self.a.iter().map(|v| v + k).collect(),
            b: self.b.iter().map(|v| v + k).collect(),
        }
    }

    /// `Π(a_i)_r / Π(b_j)_r`, computed by direct product.
    pub fn pochhammer_ratio(&self, r: u32) -> f64 {
        let mut out = 1.0;
        for k in 0..r {
            let k = f64::from(k);
            out *= self.a.iter().map(|v| v + k).product::<f64>();
            out /= self.b.iter().map(|v| v + k).product::<f64>();
        }
        out
    }

    /// `(b_1+n)...(b_q+n) / (a_1+n)...(a_p+n)`; strictly positive for
    /// every n ≥ 0 given the construction invariant.
    pub fn ratio_factor(&self, n: u64) -> f64 {
        let n = n as f64;
        let num: f64 = self.b.iter().map(|v| v + n).product();
        let den: f64 = self.a.iter().map(|v| v + n).product();
        num / den
    }

    /// Parses the `a1,a2/b1,b2` notation; either side may be empty.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (num, den) = match spec.split_once('/') {
            Some((n, d)) => (n, d),
            None => (spec, ""),
        };
        let parse_list = |s: &str| -> Result<Vec<f64>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::ParameterRange(format!("cannot parse parameter '{t}'")))
                })
                .collect()
        };
        ParamSet::new(parse_list(num)?, parse_list(den)?)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",");
        write!(f, "{}/{}", join(&self.a), join(&self.b))
    }
}

/// Validation entry point mirroring [`ParamSet::new`].
pub fn validate_params(a: &[f64], b: &[f64]) -> Result<ParamSet> {
    ParamSet::new(a.to_vec(), b.to_vec())
}
