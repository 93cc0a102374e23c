//! Leading part of the sliced integral: the `a_i^j` coefficients, the
//! `(Λ)_p^{2μ}` recurrence, its matrix form and nested-sum solution, and
//! the truncated series `S_Λ`.

mod closed;
mod matrix;

pub use closed::{c_matrix_closed_form, c_matrix_closed_form_for_grid, d_xi_apply, XiPoly};
pub use matrix::{c_matrix_recurrence, matrix_build, q_values, MatrixKind, QValues, TriMatrix};

use crate::continuum::{gamma_of, Branch};
use crate::contfrac::omega_sequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::slicing::{ModelParams, SliceGrid};

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub(crate) fn factorial<S: Scalar>(n: u64) -> S {
    let mut r = S::one();
    for k in 2..=n {
        r = r * S::from_u64(k);
    }
    r
}

/// `a_i^j = C(j,i)(1/2)_j/(1/2)_i`, zero outside `0 ≤ i ≤ j`.
pub fn a_coeff<S: Scalar>(j: i64, i: i64) -> S {
    if i < 0 || j < 0 || i > j {
        return S::zero();
    }
    let mut r = S::from_u64(binomial(j as u64, i as u64));
    for k in i..j {
        r = r * S::ratio(2 * k + 1, 2);
    }
    r
}

/// `a_i^k` for `k ≤ j_max` from `a^k_i = (k − 1/2 + i)a^{k−1}_i + a^{k−1}_{i−1}`.
pub fn a_coeff_table<S: Scalar>(j_max: usize) -> Vec<Vec<S>> {
    let mut rows: Vec<Vec<S>> = vec![vec![S::one()]];
    for k in 1..=j_max {
        let prev = &rows[k - 1];
        let row = (0..=k)
            .map(|i| {
                let keep = if i < k {
                    S::ratio(2 * (k + i) as i64 - 1, 2) * prev[i].clone()
                } else {
                    S::zero()
                };
                let shift = if i > 0 { prev[i - 1].clone() } else { S::zero() };
                keep + shift
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `(Λ)_p^{2μ}` for `1 ≤ Λ ≤ Λ_max`, `μ ≤ μ_max`, `0 ≤ p ≤ 2μ`.
#[derive(Debug, Clone)]
pub struct LambdaTable<S> {
    pub lambda_max: usize,
    pub mu_max: usize,
    /// `ω_0 … ω_{Λ_max}`.
    pub omegas: Vec<S>,
    pub a: S,
    entries: Vec<S>,
}

impl<S: Scalar> LambdaTable<S> {
    fn index(&self, lambda: usize, mu: usize, p: usize) -> usize {
        let per_lambda = (self.mu_max + 1) * (self.mu_max + 1);
        (lambda - 1) * per_lambda + mu * mu + p
    }

    pub fn get(&self, lambda: usize, mu: usize, p: usize) -> Option<&S> {
        if lambda == 0 || lambda > self.lambda_max || mu > self.mu_max || p > 2 * mu {
            return None;
        }
        Some(&self.entries[self.index(lambda, mu, p)])
    }

    /// `(Λ)_0^{2μ}`.
    pub fn contraction(&self, lambda: usize, mu: usize) -> Option<&S> {
        self.get(lambda, mu, 0)
    }
}

/// Fills the table from `ω_0 = 1/2 + B` and `A` by the ω-form recurrence
/// `(Λ)_p^{2μ} = Σ_j C(μ,j) ω_{Λ−1}^{−(2μ−2j)} Σ_i (A²/(ω_{Λ−2}ω_{Λ−1}))^i (Λ−1)_i^{2j} a_p^{2μ−2j+i}`.
pub fn lambda_table<S: Scalar>(omega0: S, a: S, lambda_max: usize, mu_max: usize) -> Result<LambdaTable<S>> {
    if lambda_max == 0 {
        return Err(Error::Domain {
            name: "Lambda_max",
            value: 0.0,
            reason: "at least one step is needed",
        });
    }
    let omegas = omega_sequence(omega0, a.clone(), lambda_max)?;
    let acoef = a_coeff_table::<S>(4 * mu_max);
    let ac = |j: usize, i: usize| -> S {
        if i > j {
            S::zero()
        } else {
            acoef[j][i].clone()
        }
    };
    let per_lambda = (mu_max + 1) * (mu_max + 1);
    let mut entries = Vec::with_capacity(lambda_max * per_lambda);

    let w0 = omegas[0].clone();
    for mu in 0..=mu_max {
        let wpow = w0.powu(2 * mu as u32);
        for p in 0..=2 * mu {
            entries.push(ac(2 * mu, p) / wpow.clone());
        }
    }

    let a2 = a.clone() * a.clone();
    for lambda in 2..=lambda_max {
        let w_last = omegas[lambda - 1].clone();
        let ratio = a2.clone() / (omegas[lambda - 2].clone() * w_last.clone());
        let ratio_pow: Vec<S> = (0..=2 * mu_max).map(|i| ratio.powu(i as u32)).collect();
        let inv_w: Vec<S> = (0..=2 * mu_max).map(|k| S::one() / w_last.powu(k as u32)).collect();
        let base = (lambda - 2) * per_lambda;
        for mu in 0..=mu_max {
            for p in 0..=2 * mu {
                let mut s = S::zero();
                for j in 0..=mu {
                    let mut inner = S::zero();
                    let lo = (p + 2 * j).saturating_sub(2 * mu);
                    for i in lo..=2 * j {
                        let prev = entries[base + j * j + i].clone();
                        inner = inner + ratio_pow[i].clone() * prev * ac(2 * mu - 2 * j + i, p);
                    }
                    s = s + S::from_u64(binomial(mu as u64, j as u64)) * inner * inv_w[2 * mu - 2 * j].clone();
                }
                entries.push(s);
            }
        }
    }
    Ok(LambdaTable {
        lambda_max,
        mu_max,
        omegas,
        a,
        entries,
    })
}

pub fn lambda_table_for_grid(grid: &SliceGrid, lambda_max: usize, mu_max: usize) -> Result<LambdaTable<f64>> {
    lambda_table(grid.omega0, grid.a_cf, lambda_max, mu_max)
}

/// `J(l,MIN;n,i;r) = Σ_{p=l}^{MIN} C(2i−l,p−l) C(2i−1/2,2i−p) n!(2i−p)!/(n−2i−p)! r^p`.
/// Terms with a factorial of a negative integer vanish.
pub fn j_function(l: i64, min: i64, n: i64, i_j: i64, ratio: f64) -> f64 {
    let fact = |k: i64| -> Option<f64> {
        if k < 0 {
            None
        } else {
            Some(factorial::<f64>(k as u64))
        }
    };
    // generalized binomial C(x, k) for integer k
    let gbinom = |x: f64, k: i64| -> f64 {
        if k < 0 {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, t| acc * (x - t as f64) / (t + 1) as f64)
    };
    let mut sum = 0.0;
    for p in l..=min {
        let top = 2 * i_j - l;
        if top < 0 || p - l > top {
            continue;
        }
        let (Some(nf), Some(kf), Some(df)) = (fact(n), fact(2 * i_j - p), fact(n - 2 * i_j - p)) else {
            continue;
        };
        let b1 = binomial(top as u64, (p - l) as u64) as f64;
        sum += b1 * gbinom(2.0 * i_j as f64 - 0.5, 2 * i_j - p) * nf * kf / df * ratio.powi(p as i32);
    }
    sum
}

/// A truncated asymptotic sum and the size of its first omitted term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub first_omitted: f64,
}

/// `S_Λ = Σ_{μ=0}^{J} (−1)^μ/(μ!(2z²)^μ) (Λ)_0^{2μ}`.
pub fn s_lambda(grid: &SliceGrid, lambda: usize, j_order: usize) -> Result<SeriesValue> {
    s_lambda_in::<f64>(grid, lambda, j_order)
}

/// [`s_lambda`] with the table and the sum carried in `S`.
pub fn s_lambda_in<S: Scalar>(grid: &SliceGrid, lambda: usize, j_order: usize) -> Result<SeriesValue> {
    if !grid.z.is_finite() {
        return Ok(SeriesValue {
            value: 1.0,
            first_omitted: 0.0,
        });
    }
    let table = lambda_table(S::from_f64(grid.omega0), S::from_f64(grid.a_cf), lambda, j_order + 1)?;
    let x = S::one() / S::from_f64(2.0 * grid.z * grid.z);
    let term = |mu: usize| {
        let t = x.powu(mu as u32) / factorial::<S>(mu as u64) * table.contraction(lambda, mu).unwrap().clone();
        if mu % 2 == 0 {
            t
        } else {
            -t
        }
    };
    let value = (0..=j_order).fold(S::zero(), |acc, mu| acc + term(mu));
    Ok(SeriesValue {
        value: value.to_f64(),
        first_omitted: term(j_order + 1).to_f64().abs(),
    })
}

/// `Z^cut = [Π_{i<N} 2(1 + bΔ²/c)ω_i]^{−1/2} S_N`.
pub fn z_cut(grid: &SliceGrid, j_order: usize) -> Result<SeriesValue> {
    z_cut_in::<f64>(grid, j_order)
}

/// [`z_cut`] with `S_N` carried in `S`.
pub fn z_cut_in<S: Scalar>(grid: &SliceGrid, j_order: usize) -> Result<SeriesValue> {
    let omegas = omega_sequence(grid.omega0, grid.a_cf, grid.n - 1)?;
    let mut ln_pref = 0.0;
    for (i, w) in omegas.iter().enumerate() {
        if *w <= 0.0 {
            return Err(Error::NotPositiveDefinite { index: i + 1 });
        }
        ln_pref -= 0.5 * (2.0 * grid.u * w).ln();
    }
    let pref = ln_pref.exp();
    let s = s_lambda_in::<S>(grid, grid.n, j_order)?;
    Ok(SeriesValue {
        value: pref * s.value,
        first_omitted: pref * s.first_omitted,
    })
}

fn tail_scale(params: &ModelParams, tau: f64) -> Result<f64> {
    Ok(match gamma_of(params) {
        Branch::Free => tau,
        Branch::Hyperbolic(g) => (g * tau).tanh() / g,
        Branch::Trigonometric(g) => {
            let x = g * tau;
            if x >= std::f64::consts::FRAC_PI_2 {
                return Err(Error::BranchPole { value: x });
            }
            x.tan() / g
        }
    })
}

fn ln_tail_magnitude(params: &ModelParams, delta: f64, t: f64, mu: usize) -> f64 {
    let m = mu as f64;
    let ln_poch = libm::lgamma(0.5 + 2.0 * m) - libm::lgamma(0.5);
    m * (params.a.ln() - 2.0 * params.c.ln() + delta.ln() + std::f64::consts::LN_2) - libm::lgamma(m + 1.0)
        + ln_poch
        + 2.0 * m * t.abs().ln()
}

/// Leading large-`μ` term `(−1)^μ a^μ/(μ!c^{2μ}) Δ^μ 2^μ (1/2)_{2μ} (tanh(γτ)/γ)^{2μ}`.
pub fn divergent_tail_term(params: &ModelParams, delta: f64, tau: f64, mu: usize) -> Result<f64> {
    let t = tail_scale(params, tau)?;
    if mu == 0 {
        return Ok(1.0);
    }
    if params.a == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ln_tail_magnitude(params, delta, t, mu).exp())
}

/// Index of the smallest divergent-tail term.
pub fn suggest_truncation_order(params: &ModelParams, delta: f64, tau: f64) -> Result<usize> {
    let t = tail_scale(params, tau)?;
    if params.a == 0.0 || t == 0.0 {
        return Ok(0);
    }
    let k = params.a / (params.c * params.c) * 2.0 * delta * t * t;
    let mut mu = 0usize;
    loop {
        let m = mu as f64;
        let ratio = k * (2.0 * m + 0.5) * (2.0 * m + 1.5) / (m + 1.0);
        if ratio >= 1.0 {
            return Ok(mu);
        }
        mu += 1;
        if mu > 100_000_000 {
            return Err(Error::NotConverged("smallest tail term"));
        }
    }
}
