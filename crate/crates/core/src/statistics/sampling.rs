use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::special::RatioSeries;
use crate::states::{Parity, StateSpec, TRUNCATION_CAP};

/// Tail mass left out of the sampling table.
pub const SAMPLE_TAIL: f64 = 1e-12;
/// Draws per independently seeded generator stream.
pub const SAMPLE_CHUNK: usize = 1 << 16;

/// Cumulative table over Fock levels, truncated where the certified tail
/// drops below [`SAMPLE_TAIL`] and renormalized.
fn cdf_table(state: &StateSpec) -> Result<Vec<f64>> {
    let params = state.params();
    let parity = state.parity();
    let series = RatioSeries { num: params.a(), den: params.b(), x: state.x(), part: parity.part() };
    let norm = state.normalizer()?.value;
    let mut cdf = Vec::new();
    let mut acc = 0.0;
    let mut t = 1.0;
    for n in 0..TRUNCATION_CAP {
        if parity.allows(n) {
            acc += t / norm;
        }
        cdf.push(acc);
        t *= series.ratio(n);
        let tail = if state.x() == 0.0 { 0.0 } else { series.tail_bound(t, n + 1) / norm };
        if n > 0 && tail < SAMPLE_TAIL {
            return Ok(cdf.into_iter().map(|c| c / acc).collect());
        }
    }
    Err(Error::Truncation(format!(
        "tail mass did not drop below {SAMPLE_TAIL:e} within {TRUNCATION_CAP} levels"
    )))
}

/// `n_samples` i.i.d. photon counts by inverse CDF. Chunk `i` of
/// [`SAMPLE_CHUNK`] draws uses ChaCha8 stream `i` of `seed`, so the output
/// does not depend on the execution mode.
pub fn sample_photon_counts(
    state: &StateSpec,
    n_samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<u64>> {
    if n_samples == 0 {
        return Err(Error::ParameterRange("n_samples must be at least 1".into()));
    }
    let cdf = cdf_table(state)?;
    let last = cdf.len() - 1;
    let chunks: Vec<(usize, usize)> = (0..n_samples)
        .step_by(SAMPLE_CHUNK)
        .enumerate()
        .map(|(i, start)| (i, SAMPLE_CHUNK.min(n_samples - start)))
        .collect();
    let parts = map_ordered(exec, &chunks, |&(idx, len)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        (0..len)
            .map(|_| {
                let u: f64 = rng.random();
                cdf.partition_point(|&c| c <= u).min(last) as u64
            })
            .collect::<Vec<u64>>()
    });
    Ok(parts.concat())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n_samples: usize,
    pub mean: f64,
    pub variance: f64,
    pub q: f64,
    pub mean_std_error: f64,
    pub variance_std_error: f64,
    /// Delta-method standard error of `q`.
    pub q_std_error: f64,
    pub parity_violations: usize,
}

pub fn summarize_counts(counts: &[u64], parity: Parity) -> Result<SampleSummary> {
    let n = counts.len();
    if n < 2 {
        return Err(Error::ParameterRange("need at least two samples".into()));
    }
    let nf = n as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / nf;
    if mean == 0.0 {
        return Err(Error::Degenerate("sample mean is zero; Q is undefined".into()));
    }
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &c in counts {
        let d = c as f64 - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let variance = m2 / (nf - 1.0);
    let (m2, m3, m4) = (m2 / nf, m3 / nf, m4 / nf);
    let q = variance / mean - 1.0;

    let var_mean = m2 / nf;
    let var_var = (m4 - m2 * m2) / nf;
    let cov = m3 / nf;
    let (g_m, g_v) = (-variance / (mean * mean), 1.0 / mean);
    let var_q = g_m * g_m * var_mean + g_v * g_v * var_var + 2.0 * g_m * g_v * cov;

    let parity_violations = counts.iter().filter(|&&c| !parity.allows(c as usize)).count();
    Ok(SampleSummary {
        n_samples: n,
        mean,
        variance,
        q,
        mean_std_error: var_mean.sqrt(),
        variance_std_error: var_var.max(0.0).sqrt(),
        q_std_error: var_q.max(0.0).sqrt(),
        parity_violations,
    })
}
