//! Remainder of the principal sum for one summation index: the Poincaré
//! piece, the `k > K0` tail and the difference between the two large-`z`
//! expansions, and the `N^{−1−θ}` decay fit over an `N` sweep.
//!
//! All pieces are relative to the head `Σ_{k≤K0}` of the single-index
//! series with neighbours `k_prev`, `k_next`, and are taken in absolute
//! value.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::slicing::{build_grid, ModelParams, SliceGrid};
use crate::specfun::{ln_gamma, ln_gamma_pcf_scaled, pochhammer, temme_exponent, temme_remainder_bound};

/// Multiplier on the leading uniform-expansion magnitude so that it
/// dominates `𝒟_{−a−1/2}(z)`; the largest observed ratio is about 1.03.
pub const F0_SAFETY: f64 = 1.25;
/// Neighbour pairs scanned by [`certify_decay`].
const NEIGHBOURS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderBudget {
    pub poincare_piece: f64,
    pub tail_piece: f64,
    pub difference_piece: f64,
    pub total: f64,
    pub n_slices: usize,
    pub k0: usize,
    pub j_order: usize,
    pub n_temme: usize,
    /// Set on budgets returned by [`certify_decay`].
    pub theta_fit: Option<f64>,
}

/// `ln[ξ^{2k}/(2k)!]`.
fn ln_weight(xi: f64, k: usize) -> f64 {
    2.0 * k as f64 * xi.ln() - ln_gamma(2.0 * k as f64 + 1.0)
}

/// `ln Γ(m+1/2)𝒟_{−m−1/2}(z)`, or `ln Γ(m+1/2)` at `z = ∞`.
fn ln_gd(m: usize, z: f64) -> Result<f64> {
    if z.is_infinite() {
        Ok(ln_gamma(m as f64 + 0.5))
    } else {
        ln_gamma_pcf_scaled(m as f64, z)
    }
}

/// `ln` of the head `Σ_{k≤K0}` of the single-index series.
fn ln_head(grid: &SliceGrid, k0: usize, k_prev: usize, k_next: usize) -> Result<f64> {
    let terms = (0..=k0)
        .map(|k| Ok(ln_weight(grid.xi, k) + ln_gd(k_prev + k, grid.z)? + ln_gd(k + k_next, grid.z)?))
        .collect::<Result<Vec<f64>>>()?;
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln())
}

fn check_grid(grid: &SliceGrid) -> Result<()> {
    if !grid.z.is_finite() {
        return Err(Error::Domain {
            name: "a",
            value: grid.params.a,
            reason: "the remainder vanishes identically at a = 0",
        });
    }
    Ok(())
}

/// `𝓜` maximized over `a = 0..=2K0` for the Poincaré bound at order `J`.
fn m_constant(z: f64, k0: usize, j_order: usize) -> f64 {
    let j = j_order as u32;
    let mut scale = (2.0 * z * z).powi(j_order as i32);
    for k in 1..j_order {
        scale *= k as f64;
    }
    (0..=2 * k0)
        .map(|a| {
            let a = a as f64;
            temme_remainder_bound(a, z, j) * scale / pochhammer(a + 0.5, 2 * j)
        })
        .fold(0.0, f64::max)
}

/// Finite `k ≤ K0` sum with the Poincaré remainder replaced by its bound.
/// At `J = 0` the remainder is bounded by 1.
pub fn bound_poincare_piece(grid: &SliceGrid, k0: usize, j_order: usize, k_prev: usize, k_next: usize) -> Result<f64> {
    check_grid(grid)?;
    let z = grid.z;
    let head = ln_head(grid, k0, k_prev, k_next)?;
    if j_order == 0 {
        let mut s = 0.0;
        for k in 0..=k0 {
            let m = (k + k_next) as f64;
            s += (ln_weight(grid.xi, k) + ln_gd(k_prev + k, z)? + ln_gamma(m + 0.5) - head).exp();
        }
        return Ok(s);
    }
    if 2.0 * ((k_prev + k_next + 2 * k0) as f64).sqrt() > z {
        return Err(Error::Domain {
            name: "z",
            value: z,
            reason: "outside the validity region of the Poincare remainder bound",
        });
    }
    let big_m = m_constant(z, k0, j_order);
    let mut ln_pref = big_m.ln() - j_order as f64 * (2.0 * z * z).ln();
    for k in 1..j_order {
        ln_pref -= (k as f64).ln();
    }
    let mut s = 0.0;
    for k in 0..=k0 {
        let m = (k + k_next) as f64;
        let ln_t = ln_weight(grid.xi, k) + ln_gd(k_prev + k, z)? + ln_gamma(m + 2.0 * j_order as f64 + 0.5);
        s += (ln_pref + ln_t - head).exp();
    }
    Ok(s)
}

/// `min(1, F0_SAFETY·e^{−𝒜z²}(1+4λ)^{−1/4})` at `λ = a/z²`, in logs.
fn ln_f0_majorant(a: f64, z: f64) -> Result<f64> {
    let (lambda, _, big_a) = temme_exponent(a, z)?;
    let ln_f0 = -big_a * z * z - 0.25 * (1.0 + 4.0 * lambda).ln();
    Ok((F0_SAFETY.ln() + ln_f0).min(0.0))
}

/// Supremum over `k > K0` of `ξ²(k+k_prev+1/2)(k+k_next+1/2)/((2k+1)(2k+2))`,
/// which majorizes the term ratio since `𝒟` decreases in its order.
fn tail_ratio(xi: f64, k0: usize, k_prev: usize, k_next: usize) -> f64 {
    let k = (k0 + 1) as f64;
    let f1 = (k + k_prev as f64 + 0.5) / (2.0 * k + 1.0);
    let f2 = (k + k_next as f64 + 0.5) / (2.0 * k + 2.0);
    xi * xi * f1.max(0.5) * f2.max(0.5)
}

fn ln_tail_majorant_term(grid: &SliceGrid, k: usize, k_prev: usize, k_next: usize) -> Result<f64> {
    let m = (k + k_next) as f64;
    Ok(ln_weight(grid.xi, k) + ln_gd(k_prev + k, grid.z)? + ln_gamma(m + 0.5) + ln_f0_majorant(m, grid.z)?)
}

/// Geometric majorant of `Σ_{k>K0}` relative to the head.
pub fn bound_tail_piece(grid: &SliceGrid, k0: usize, k_prev: usize, k_next: usize) -> Result<f64> {
    check_grid(grid)?;
    let r = tail_ratio(grid.xi, k0, k_prev, k_next);
    if r >= 0.5 {
        return Err(Error::RatioTooLarge { ratio: r });
    }
    let head = ln_head(grid, k0, k_prev, k_next)?;
    let first = ln_tail_majorant_term(grid, k0 + 1, k_prev, k_next)?;
    Ok((first - head).exp() / (1.0 - r))
}

/// `C·z^{−2min(n,J)}`, with `C` the tail sum weighted by the order-`min(n,J)`
/// coefficient `(a+1/2)_{2m}/(m! 2^m)`.
pub fn bound_difference_piece(
    grid: &SliceGrid,
    k0: usize,
    j_order: usize,
    n_temme: usize,
    k_prev: usize,
    k_next: usize,
) -> Result<f64> {
    check_grid(grid)?;
    let m = j_order.min(n_temme);
    let head = ln_head(grid, k0, k_prev, k_next)?;
    let ln_coef = |a: f64| {
        let (ln_p, _) = crate::specfun::ln_pochhammer(a + 0.5, 2 * m as u32);
        ln_p - ln_gamma(m as f64 + 1.0) - m as f64 * std::f64::consts::LN_2
    };
    let mut c = 0.0;
    let mut k = k0 + 1;
    loop {
        let t = (ln_tail_majorant_term(grid, k, k_prev, k_next)? + ln_coef((k + k_next) as f64) - head).exp();
        c += t;
        if t <= 1e-17 * c || c == 0.0 {
            break;
        }
        k += 1;
        if k > k0 + 100_000 {
            return Err(Error::NotConverged("difference-piece coefficient"));
        }
    }
    Ok(c * grid.z.powi(-2 * m as i32))
}

/// All three pieces at one grid and neighbour pair.
pub fn budget(
    grid: &SliceGrid,
    k0: usize,
    j_order: usize,
    n_temme: usize,
    k_prev: usize,
    k_next: usize,
) -> Result<RemainderBudget> {
    let poincare_piece = bound_poincare_piece(grid, k0, j_order, k_prev, k_next)?;
    let tail_piece = bound_tail_piece(grid, k0, k_prev, k_next)?;
    let difference_piece = bound_difference_piece(grid, k0, j_order, n_temme, k_prev, k_next)?;
    Ok(RemainderBudget {
        poincare_piece,
        tail_piece,
        difference_piece,
        total: poincare_piece + tail_piece + difference_piece,
        n_slices: grid.n,
        k0,
        j_order,
        n_temme,
        theta_fit: None,
    })
}

/// Largest budget over the neighbour pairs `k_prev, k_next ∈ {0, 1}`.
pub fn worst_budget(grid: &SliceGrid, k0: usize, j_order: usize, n_temme: usize) -> Result<RemainderBudget> {
    let mut worst: Option<RemainderBudget> = None;
    for (kp, kn) in NEIGHBOURS {
        let b = budget(grid, k0, j_order, n_temme, kp, kn)?;
        if worst.map_or(true, |w| b.total > w.total) {
            worst = Some(b);
        }
    }
    Ok(worst.unwrap())
}

/// `K0 = max(1, ⌈scale·ln N⌉)`.
pub fn log_k0_rule(scale: f64) -> impl Fn(usize) -> usize + Sync {
    move |n| ((scale * (n as f64).ln()).ceil() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayCertificate {
    pub budgets: Vec<RemainderBudget>,
    /// Fitted `θ` of `total ∝ N^{−1−θ}`.
    pub theta: f64,
    /// Totals strictly decrease along the sweep.
    pub monotone: bool,
}

impl DecayCertificate {
    pub fn certified(&self) -> bool {
        self.theta > 0.0 && self.monotone
    }

    /// `Err(NonMonotone)` when the totals do not decrease.
    pub fn require_monotone(&self) -> Result<()> {
        if self.monotone {
            Ok(())
        } else {
            Err(Error::NonMonotone)
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Budgets over `n_list` with `K0 = k0_rule(N)` and the fitted decay exponent.
pub fn certify_decay<R>(
    params: &ModelParams,
    n_list: &[usize],
    k0_rule: R,
    j_order: usize,
    n_temme: usize,
) -> Result<DecayCertificate>
where
    R: Fn(usize) -> usize + Sync,
{
    if n_list.len() < 3 {
        return Err(Error::Domain {
            name: "N_list",
            value: n_list.len() as f64,
            reason: "at least three slice counts are needed for the fit",
        });
    }
    let mut budgets = n_list
        .par_iter()
        .map(|&n| {
            let grid = build_grid(*params, n)?;
            worst_budget(&grid, k0_rule(n), j_order, n_temme)
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = n_list.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = budgets.iter().map(|b| b.total).collect();
    let theta = -log_log_slope(&xs, &ys) - 1.0;
    let mut order: Vec<usize> = (0..n_list.len()).collect();
    order.sort_by_key(|&i| n_list[i]);
    let monotone = order.windows(2).all(|w| ys[w[1]] < ys[w[0]]);
    for b in &mut budgets {
        b.theta_fit = Some(theta);
    }
    Ok(DecayCertificate {
        budgets,
        theta,
        monotone,
    })
}
