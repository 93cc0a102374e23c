//! Time-slicing quantities and the exact multi-index representation of `Z_N`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, ln_gamma_pcf_scaled};

/// Model constants of the action `∫ [c/2 φ'² + bφ² + aφ⁴] dτ` on `[0, β]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub beta: f64,
}

impl ModelParams {
    /// `a ≥ 0` (the harmonic case `a = 0` is admitted), `c > 0`, `β > 0`.
    pub fn new(a: f64, b: f64, c: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("beta", beta)] {
            if !v.is_finite() {
                return Err(Error::Domain {
                    name,
                    value: v,
                    reason: "model constants must be finite",
                });
            }
        }
        if a < 0.0 {
            return Err(Error::Domain {
                name: "a",
                value: a,
                reason: "the quartic coupling must be non-negative",
            });
        }
        if c <= 0.0 {
            return Err(Error::Domain {
                name: "c",
                value: c,
                reason: "the kinetic coefficient must be positive",
            });
        }
        if beta <= 0.0 {
            return Err(Error::Domain {
                name: "beta",
                value: beta,
                reason: "the time horizon must be positive",
            });
        }
        Ok(Self { a, b, c, beta })
    }

    pub fn with_a(self, a: f64) -> Result<Self> {
        Self::new(a, self.b, self.c, self.beta)
    }

    pub fn with_b(self, b: f64) -> Result<Self> {
        Self::new(self.a, b, self.c, self.beta)
    }

    pub fn with_beta(self, beta: f64) -> Result<Self> {
        Self::new(self.a, self.b, self.c, beta)
    }
}

/// Discretization of `[0, β]` into `N` slices of width `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceGrid {
    pub params: ModelParams,
    pub n: usize,
    pub delta: f64,
    /// `1 + bΔ²/c`
    pub u: f64,
    /// `1/2 + bΔ²/c`
    pub v: f64,
    pub xi: f64,
    pub xi_last: f64,
    /// Interior argument; infinite when `a = 0`.
    pub z: f64,
    pub z_last: f64,
    pub omega0: f64,
    pub a_cf: f64,
    pub b_cf: f64,
}

impl SliceGrid {
    /// `z_i`: the interior value for `i < N`, the last-slice value for `i = N`.
    pub fn z_at(&self, i: usize) -> f64 {
        if i >= self.n {
            self.z_last
        } else {
            self.z
        }
    }

    /// `ξ_i` for `1 ≤ i ≤ N−1`; `ξ_N` enters only as `ξ_N^{2k_N}` with
    /// `k_N = 0` and is reported as 1.
    pub fn xi_at(&self, i: usize) -> f64 {
        if i >= self.n {
            1.0
        } else if i + 1 == self.n {
            self.xi_last
        } else {
            self.xi
        }
    }
}

pub fn build_grid(params: ModelParams, n: usize) -> Result<SliceGrid> {
    if n == 0 {
        return Err(Error::Domain {
            name: "N",
            value: 0.0,
            reason: "at least one slice is needed",
        });
    }
    let delta = params.beta / n as f64;
    let s = params.b * delta * delta / params.c;
    let u = 1.0 + s;
    let v = 0.5 + s;
    if !(u > 0.0) {
        return Err(Error::GridPositivity {
            which: "1 + b*delta^2/c",
            value: u,
        });
    }
    if !(v > 0.0) {
        return Err(Error::GridPositivity {
            which: "1/2 + b*delta^2/c",
            value: v,
        });
    }
    let root = (2.0 * params.a * delta.powi(3)).sqrt();
    let (z, z_last) = if params.a > 0.0 {
        (params.c * u / root, params.c * v / root)
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    let omega0 = v / u;
    let b_cf = s / (2.0 * u);
    let a_cf = 1.0 / (2.0 * u);
    debug_assert!((omega0 - (0.5 + b_cf)).abs() <= 1e-14 * omega0.abs().max(1.0));
    Ok(SliceGrid {
        params,
        n,
        delta,
        u,
        v,
        xi: 1.0 / u,
        xi_last: 1.0 / (u * v).sqrt(),
        z,
        z_last,
        omega0,
        a_cf,
        b_cf,
    })
}

/// `ln Γ(m+1/2)𝒟_{−m−1/2}(z)` for `m = 0..=m_max`; `Γ(m+1/2)` when `z = ∞`.
fn ln_gamma_pcf_table(z: f64, m_max: usize) -> Result<Vec<f64>> {
    (0..=m_max)
        .map(|m| {
            if z.is_infinite() {
                Ok(ln_gamma(m as f64 + 0.5))
            } else {
                ln_gamma_pcf_scaled(m as f64, z)
            }
        })
        .collect()
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

const MULTISUM_MAX_N: usize = 5;

/// `Z_N` from the multi-index series with every `k_i ≤ K0`.
pub fn zn_multisum(grid: &SliceGrid, k0: usize) -> Result<f64> {
    let order: Vec<usize> = (0..grid.n.saturating_sub(1)).collect();
    zn_multisum_ordered(grid, k0, &order)
}

/// As [`zn_multisum`], iterating the indices `k_{order[0]+1}` (outermost) …
/// Exists to check that the result does not depend on summation order.
pub fn zn_multisum_ordered(grid: &SliceGrid, k0: usize, order: &[usize]) -> Result<f64> {
    let n = grid.n;
    if n > MULTISUM_MAX_N {
        return Err(Error::CostLimit {
            what: "zn_multisum slice count",
            limit: MULTISUM_MAX_N,
        });
    }
    let free = n - 1;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..free).collect::<Vec<_>>() {
        return Err(Error::Domain {
            name: "order",
            value: order.len() as f64,
            reason: "order must be a permutation of the summed indices",
        });
    }
    let m_max = 2 * k0;
    let ln_interior = ln_gamma_pcf_table(grid.z, m_max)?;
    let ln_last = ln_gamma_pcf_table(grid.z_last, m_max)?;
    // weight of k_i: ξ_i^{2k}/(2k)!
    let ln_weight: Vec<Vec<f64>> = (1..n)
        .map(|i| {
            let ln_xi = grid.xi_at(i).ln();
            (0..=k0)
                .map(|k| 2.0 * k as f64 * ln_xi - ln_factorial(2 * k))
                .collect()
        })
        .collect();

    let ln_term = |ks: &[usize]| -> f64 {
        // ks[j] = k_{j+1}; k_0 = k_N = 0
        let mut s = 0.0;
        for i in 1..=n {
            let prev = if i == 1 { 0 } else { ks[i - 2] };
            let cur = if i == n { 0 } else { ks[i - 1] };
            let table = if i == n { &ln_last } else { &ln_interior };
            s += table[prev + cur];
            if i < n {
                s += ln_weight[i - 1][cur];
            }
        }
        s
    };

    let zeros = vec![0usize; free];
    let ln_ref = ln_term(&zeros);
    let total: f64 = if free == 0 {
        1.0
    } else {
        let outer = order[0];
        let inner: Vec<usize> = order[1..].to_vec();
        (0..=k0)
            .into_par_iter()
            .map(|k_outer| {
                let mut ks = vec![0usize; free];
                ks[outer] = k_outer;
                let mut acc = 0.0;
                loop {
                    acc += (ln_term(&ks) - ln_ref).exp();
                    // odometer over the inner indices, last listed fastest
                    let mut pos = inner.len();
                    loop {
                        if pos == 0 {
                            return acc;
                        }
                        pos -= 1;
                        let idx = inner[pos];
                        if ks[idx] < k0 {
                            ks[idx] += 1;
                            break;
                        }
                        ks[idx] = 0;
                    }
                }
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .sum()
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let ln_pref = -0.5 * (n as f64 - 1.0) * (two_pi * grid.u).ln() - 0.5 * (two_pi * grid.v).ln();
    Ok((ln_pref + ln_ref + total.ln()).exp())
}

/// Large-`k` form of `ln a_k` for the single-index series with neighbours
/// `k_prev`, `k_next`, in the scaled-function convention (hence the `+z²/2`).
pub fn term_log_asymptotics(k: u64, k_prev: u64, k_next: u64, xi: f64, z: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain {
            name: "k",
            value: k as f64,
            reason: "the large-k form needs k >= 2",
        });
    }
    let kf = k as f64;
    let side = (k_prev + k_next) as f64;
    Ok(-(kf - (side - 1.0) / 2.0) * kf.ln()
        + 2.0 * kf * ((xi * z).ln() - std::f64::consts::LN_2 + 0.5)
        - 2.0 * kf.sqrt() * z
        + (side + 1.0) * z.ln()
        + 0.5 * std::f64::consts::PI.ln()
        + 0.5 * z * z)
}

/// `ln a_k` of the single-index series with neighbours `k_prev`, `k_next`.
pub fn ln_single_index_term(k: usize, k_prev: usize, k_next: usize, xi: f64, z: f64) -> Result<f64> {
    let left = ln_gamma_pcf_scaled((k_prev + k) as f64, z)?;
    let right = ln_gamma_pcf_scaled((k + k_next) as f64, z)?;
    Ok(2.0 * k as f64 * xi.ln() - ln_factorial(2 * k) + left + right)
}

/// `ε(K0)`: tail (`k > K0`) over head (`k ≤ K0`) of the single-index series
/// at the interior `ξ`, `z`.
pub fn principal_sum_epsilon(grid: &SliceGrid, k0: usize, k_prev: usize, k_next: usize) -> Result<f64> {
    if k0 < 1 {
        return Err(Error::Domain {
            name: "K0",
            value: k0 as f64,
            reason: "K0 must be at least 1",
        });
    }
    let z = grid.z;
    let ln_ref = ln_single_index_term(0, k_prev, k_next, grid.xi, z)?;
    let mut head = 0.0;
    for k in 0..=k0 {
        head += (ln_single_index_term(k, k_prev, k_next, grid.xi, z)? - ln_ref).exp();
    }
    let mut tail = 0.0;
    let mut k = k0 + 1;
    loop {
        let t = (ln_single_index_term(k, k_prev, k_next, grid.xi, z)? - ln_ref).exp();
        tail += t;
        if t < 1e-18 * head {
            break;
        }
        k += 1;
        if k > k0 + 100_000 {
            return Err(Error::NotConverged("single-index tail"));
        }
    }
    Ok(tail / head)
}
