//! Gamma-function helpers and overflow-safe Pochhammer symbols.

use crate::error::{Error, Result};

// 2^100 and its inverse, exact in binary
const RESCALE: f64 = 1.2676506002282294e30;
const RESCALE_INV: f64 = 7.888609052210118e-31;
const RESCALE_BITS: u32 = 100;
// Cody–Waite split of ln 2: k·LN2_HI is exact for the k reached here
const LN2_HI: f64 = 0.693_147_180_369_123_8;
const LN2_LO: f64 = 1.908_214_929_270_587_7e-10;
/// Above this length the log-gamma difference is cheaper than the product.
const DIRECT_PRODUCT_MAX: u64 = 512;

/// `ln (a)_n = ln Γ(a+n) − ln Γ(a)` for `a > 0`.
///
/// Short products are accumulated directly with a rescaled mantissa, which
/// keeps the result within a few ulps of the exact logarithm.
pub fn ln_pochhammer(a: f64, n: u64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("ln_pochhammer requires a > 0, got {a}")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if n <= DIRECT_PRODUCT_MAX {
        let mut mantissa = 1.0;
        let mut scale = 0u32;
        for k in 0..n {
            mantissa *= a + k as f64;
            if mantissa > RESCALE {
                mantissa *= RESCALE_INV;
                scale += RESCALE_BITS;
            }
        }
        let k = f64::from(scale);
        Ok(mantissa.ln() + k * LN2_LO + k * LN2_HI)
    } else {
        Ok(ln_gamma(a + n as f64) - ln_gamma(a))
    }
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    // (1)_n = n!
    ln_pochhammer(1.0, n).expect("a = 1 is valid")
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `1/Γ(x)`, exactly zero at the poles `x = 0, −1, −2, ...`.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// True when `x` is zero or a negative integer.
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product() {
        assert_eq!(ln_pochhammer(5.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn factorials() {
        assert!((ln_pochhammer(1.0, 6).unwrap() - 720f64.ln()).abs() < 1e-15);
        assert!((ln_factorial(10) - 3_628_800f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(ln_pochhammer(0.0, 3).is_err());
        assert!(ln_pochhammer(-1.5, 3).is_err());
    }

    #[test]
    fn long_products_match_log_gamma() {
        for &a in &[0.3, 1.7, 12.5] {
            let direct = ln_pochhammer(a, DIRECT_PRODUCT_MAX).unwrap();
            let via_gamma = ln_gamma(a + DIRECT_PRODUCT_MAX as f64) - ln_gamma(a);
            assert!((direct - via_gamma).abs() < 1e-11 * direct.abs());
        }
    }

    #[test]
    fn reciprocal_gamma_poles() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        assert!((recip_gamma(0.5) - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }
}
