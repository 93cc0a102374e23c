use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::gaussian::ln_zn_gaussian;
use super::OracleResult;
use crate::error::{Error, Result};
use crate::slicing::ModelParams;

const BATCHES: usize = 100;
const MIN_SAMPLES: usize = 10_000;

/// Lower bidiagonal Cholesky factor of the normalized tridiagonal form:
/// diagonal entries and the subdiagonal `l_{i,i−1}`.
fn cholesky(diag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut l = vec![0.0; n];
    let mut sub = vec![0.0; n];
    for i in 0..n {
        let mut d = diag[i];
        if i > 0 {
            sub[i] = -1.0 / l[i - 1];
            d -= sub[i] * sub[i];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { index: i + 1 });
        }
        l[i] = d.sqrt();
    }
    Ok((l, sub))
}

/// Importance-sampled `Z_N`: Gaussian proposal from the harmonic part,
/// weights `exp(−aΔΣφ_i⁴)`. Batch `k` draws from ChaCha8 stream `k` of
/// `seed`, so the result does not depend on the thread count.
pub fn zn_montecarlo(params: &ModelParams, n: usize, samples: usize, seed: u64) -> Result<OracleResult> {
    if samples < MIN_SAMPLES {
        return Err(Error::Domain {
            name: "samples",
            value: samples as f64,
            reason: "at least 10^4 samples are required",
        });
    }
    let harmonic = ModelParams { a: 0.0, ..*params };
    let z_gauss = ln_zn_gaussian(&harmonic, n)?.exp();
    let delta = params.beta / n as f64;
    let s = params.b * delta * delta / params.c;
    let mut diag = vec![2.0 * (1.0 + s); n];
    diag[n - 1] = 2.0 * (0.5 + s);
    let (l, sub) = cholesky(&diag)?;
    let scale = (delta / params.c).sqrt();
    let per_batch = samples / BATCHES;
    let a_delta = params.a * delta;

    let means: Vec<f64> = (0..BATCHES)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let mut eps = vec![0.0; n];
            let mut phi = vec![0.0; n];
            let mut acc = 0.0;
            for _ in 0..per_batch {
                for e in eps.iter_mut() {
                    *e = StandardNormal.sample(&mut rng);
                }
                // Lᵀx = ε, back substitution
                for i in (0..n).rev() {
                    let mut r = eps[i];
                    if i + 1 < n {
                        r -= sub[i + 1] * phi[i + 1];
                    }
                    phi[i] = r / l[i];
                }
                let quartic: f64 = phi.iter().map(|p| (scale * p).powi(4)).sum();
                acc += (-a_delta * quartic).exp();
            }
            acc / per_batch as f64
        })
        .collect();

    let mean = means.iter().sum::<f64>() / BATCHES as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (BATCHES - 1) as f64;
    Ok(OracleResult {
        value: z_gauss * mean,
        error_estimate: z_gauss * (var / BATCHES as f64).sqrt(),
        cost: (per_batch * BATCHES) as u64,
    })
}
