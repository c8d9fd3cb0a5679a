use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gibbs state of `H = ω a†a` at inverse temperature `β` (ħ = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalSpec {
    beta: f64,
    omega: f64,
}

impl ThermalSpec {
    pub fn new(beta: f64, omega: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::ParameterRange(format!("beta must be positive and finite, got {beta}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::ParameterRange(format!("omega must be positive and finite, got {omega}")));
        }
        Ok(ThermalSpec { beta, omega })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn beta_omega(&self) -> f64 {
        self.beta * self.omega
    }
}

/// `Z = Σ e^{-βωn} = 1/(1 − e^{−βω})`.
pub fn thermal_partition(t: &ThermalSpec) -> f64 {
    -1.0 / (-t.beta_omega()).exp_m1()
}

/// `n̄ = 1/(e^{βω} − 1)`.
pub fn mean_occupation(t: &ThermalSpec) -> f64 {
    1.0 / t.beta_omega().exp_m1()
}

/// `⟨(a†)^r a^r⟩ = (1−u) u^r (d/du)^r (1−u)^{-1}`, `u = e^{−βω}`. The
/// derivatives are generated by `G_{r+1} = (r+1) · u/(1−u) · G_r`.
pub fn thermal_normal_moment(t: &ThermalSpec, r: u32) -> f64 {
    let nbar = mean_occupation(t);
    (0..r).fold(1.0, |g, k| g * f64::from(k + 1) * nbar)
}

/// `⟨N^r⟩ = Z^{-1} (−1/ω)^r ∂^r_β Z`, written as a polynomial `M_r(n̄)` with
/// `M_0 = 1`, `M_{r+1} = n̄ M_r + n̄(1+n̄) M_r'`.
pub fn thermal_raw_moment(t: &ThermalSpec, r: u32) -> f64 {
    let mut coeffs = vec![1.0f64];
    for _ in 0..r {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            if k > 0 {
                let d = k as f64 * c;
                next[k] += d;
                next[k + 1] += d;
            }
        }
        coeffs = next;
    }
    let y = mean_occupation(t);
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
}
