//! The harmonic (`a = 0`) slice integral as a tridiagonal Gaussian.
//!
//! In units of `c/Δ` the quadratic form has diagonal `2u` on slices
//! `1..N−1`, `2v` on slice `N`, and `−1` off the diagonal.

use crate::error::{Error, Result};
use crate::slicing::ModelParams;

fn require_harmonic(params: &ModelParams) -> Result<()> {
    if params.a != 0.0 {
        return Err(Error::Domain {
            name: "a",
            value: params.a,
            reason: "the Gaussian oracle needs a = 0",
        });
    }
    Ok(())
}

fn require_slices(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain {
            name: "N",
            value: 0.0,
            reason: "at least one slice is needed",
        });
    }
    Ok(())
}

/// Diagonal of the normalized form for `N` slices, last entry half-weighted.
fn form_diagonal(params: &ModelParams, n: usize) -> Vec<f64> {
    let delta = params.beta / n as f64;
    let s = params.b * delta * delta / params.c;
    let mut d = vec![2.0 * (1.0 + s); n];
    d[n - 1] = 2.0 * (0.5 + s);
    d
}

/// `ln det` of a tridiagonal matrix with unit off-diagonal magnitude, via
/// ratios of consecutive leading minors.
fn ln_det_tridiagonal(diag: &[f64]) -> Result<f64> {
    let mut ln_det = 0.0;
    let mut ratio = f64::INFINITY; // D_0/D_{-1}
    for (k, &d) in diag.iter().enumerate() {
        ratio = d - 1.0 / ratio;
        if !(ratio > 0.0) {
            return Err(Error::NotPositiveDefinite { index: k + 1 });
        }
        ln_det += ratio.ln();
    }
    Ok(ln_det)
}

/// `ln Z_N` at `a = 0`.
pub fn ln_zn_gaussian(params: &ModelParams, n: usize) -> Result<f64> {
    require_harmonic(params)?;
    require_slices(n)?;
    Ok(-0.5 * ln_det_tridiagonal(&form_diagonal(params, n))?)
}

/// `Z_N` at `a = 0`: `det(T)^{−1/2}` with `T` the normalized form.
pub fn zn_gaussian(params: &ModelParams, n: usize) -> Result<f64> {
    ln_zn_gaussian(params, n).map(f64::exp)
}

/// Diagonal of `T^{−1}` by the two-sweep minor recurrences. Minors are kept
/// as ratios so nothing overflows.
fn inverse_diagonal(diag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    // forward: r_k = θ_k/θ_{k−1}
    let mut fwd = vec![0.0; n];
    let mut r = f64::INFINITY;
    for k in 0..n {
        r = diag[k] - 1.0 / r;
        if !(r > 0.0) {
            return Err(Error::NotPositiveDefinite { index: k + 1 });
        }
        fwd[k] = r;
    }
    // backward: s_k = φ_k/φ_{k+1}
    let mut bwd = vec![0.0; n];
    let mut s = f64::INFINITY;
    for k in (0..n).rev() {
        s = diag[k] - 1.0 / s;
        if !(s > 0.0) {
            return Err(Error::NotPositiveDefinite { index: k + 1 });
        }
        bwd[k] = s;
    }
    // (T⁻¹)_ii = θ_{i−1}φ_{i+1}/θ_N = 1/(r_i + s_i − d_i)
    Ok((0..n).map(|k| 1.0 / (fwd[k] + bwd[k] - diag[k])).collect())
}

/// Variances `⟨φ_i²⟩` of the harmonic slice measure, `i = 1..N`.
pub fn covariance_diagonal(params: &ModelParams, n: usize) -> Result<Vec<f64>> {
    require_slices(n)?;
    let scale = params.beta / n as f64 / params.c;
    Ok(inverse_diagonal(&form_diagonal(params, n))?
        .into_iter()
        .map(|x| scale * x)
        .collect())
}

/// `−d ln Z_N/da` at `a = 0`, i.e. `Δ Σ_i 3Σ_ii²`.
pub fn coupling_derivative(params: &ModelParams, n: usize) -> Result<f64> {
    require_harmonic(params)?;
    let delta = params.beta / n as f64;
    let var = covariance_diagonal(params, n)?;
    Ok(delta * var.iter().map(|s| 3.0 * s * s).sum::<f64>())
}

/// As [`coupling_derivative`] for the bridge measure with `φ_0 = φ_N = 0`:
/// `N−1` free slices, all with the full diagonal.
pub fn bridge_coupling_derivative(params: &ModelParams, n: usize) -> Result<f64> {
    require_harmonic(params)?;
    if n < 2 {
        return Err(Error::Domain {
            name: "N",
            value: n as f64,
            reason: "a bridge needs at least one free slice",
        });
    }
    let delta = params.beta / n as f64;
    let s = params.b * delta * delta / params.c;
    let diag = vec![2.0 * (1.0 + s); n - 1];
    let scale = delta / params.c;
    Ok(delta
        * inverse_diagonal(&diag)?
            .iter()
            .map(|x| 3.0 * (scale * x).powi(2))
            .sum::<f64>())
}
