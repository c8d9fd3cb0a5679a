//! Gauss hypergeometric function `2F1(a, b; c; x)` for real parameters.

use super::gamma::{gamma, is_nonpositive_integer, recip_gamma};
use super::series::{RatioSeries, SeriesPart};
use crate::error::{Error, Result};

const SERIES_TOL: f64 = 1e-15;
const DIRECT_LIMIT: f64 = 0.9;
const PFAFF_LIMIT: f64 = -0.5;
const INTEGER_GAP: f64 = 1e-8;
const PERTURBATION: f64 = 1e-5;

fn direct(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    Ok(RatioSeries { num: &[a, b], den: &[c], x: z, part: SeriesPart::All }.sum(SERIES_TOL)?.value)
}

/// Connection formula about `z = 1`, written in terms of `w = 1 − z`.
fn around_one(a: f64, b: f64, c: f64, w: f64) -> Result<f64> {
    let s = c - a - b;
    if (s - s.round()).abs() < INTEGER_GAP {
        // log case: average two nearby non-degenerate parameter values
        let lo = around_one(a, b, c - PERTURBATION, w)?;
        let hi = around_one(a, b, c + PERTURBATION, w)?;
        return Ok(0.5 * (lo + hi));
    }
    let gc = gamma(c);
    let first = gc * gamma(s) * recip_gamma(c - a) * recip_gamma(c - b) * direct(a, b, 1.0 - s, w)?;
    let second = if recip_gamma(a) == 0.0 || recip_gamma(b) == 0.0 {
        0.0
    } else {
        w.powf(s) * gc * gamma(-s) * recip_gamma(a) * recip_gamma(b) * direct(c - a, c - b, 1.0 + s, w)?
    };
    Ok(first + second)
}

/// `2F1(a,b;c;z)` given both `z` and `1 − z`; the complement is used as is
/// near `z = 1`, where forming it from `z` would cancel.
pub(crate) fn gauss_2f1_split(a: f64, b: f64, c: f64, z: f64, one_minus_z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("2F1 undefined for c = {c}")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return direct(a, b, c, z);
    }
    if z < PFAFF_LIMIT {
        // Pfaff: (1−z)^{−a} 2F1(a, c−b; c; z/(z−1))
        return Ok(one_minus_z.powf(-a) * direct(a, c - b, c, -z / one_minus_z)?);
    }
    if z <= DIRECT_LIMIT {
        return direct(a, b, c, z);
    }
    around_one(a, b, c, one_minus_z)
}

/// `2F1(a, b; c; x)` for `|x| < 1`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("2F1 requires |x| < 1, got {x}")));
    }
    gauss_2f1_split(a, b, c, x, 1.0 - x)
}
