//! Continuum limit of the leading part: `γ`, the closed μ=1 term, the
//! extrapolated μ=2,3 terms, `S(a,b,c,τ)` and the potential
//! `−2(ln S)'' − 4((ln S)')²`.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ggy::SProvider;
use crate::recurrence::lambda_table_for_grid;
use crate::slicing::{build_grid, ModelParams};

/// Below this `|γτ|` the μ=1 term is evaluated from its Taylor series.
const SERIES_SWITCH: f64 = 0.1;
/// Taylor coefficients of `(3/(8x³))(3x tanh²x + tanh x − x)` in `x²`.
const C1_SERIES: [f64; 6] = [
    1.0,
    -7.0 / 10.0,
    17.0 / 42.0,
    -403.0 / 1890.0,
    5528.0 / 51975.0,
    -103759.0 / 2027025.0,
];
/// Slices of the coarsest level used by [`extrapolate_c_term`].
const EXTRAPOLATION_BASE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// `b = 0`.
    Free,
    /// `b > 0`, carrying `γ = √(2b/c)`.
    Hyperbolic(f64),
    /// `b < 0`, carrying `γ̃ = √(−2b/c)`.
    Trigonometric(f64),
}

pub fn gamma_of(params: &ModelParams) -> Branch {
    let g = (2.0 * params.b.abs() / params.c).sqrt();
    if params.b > 0.0 {
        Branch::Hyperbolic(g)
    } else if params.b < 0.0 {
        Branch::Trigonometric(g)
    } else {
        Branch::Free
    }
}

/// `C_1(τ)` with its first two τ-derivatives.
pub fn continuum_c2_derivatives(params: &ModelParams, tau: f64) -> Result<[f64; 3]> {
    let (g, sign) = match gamma_of(params) {
        Branch::Free => (0.0, 1.0),
        Branch::Hyperbolic(g) => (g, 1.0),
        Branch::Trigonometric(g) => {
            if g * tau >= FRAC_PI_2 {
                return Err(Error::BranchPole { value: g * tau });
            }
            (g, -1.0)
        }
    };
    let x = g * tau;
    if x.abs() < SERIES_SWITCH {
        let s = sign * g * g;
        let mut out = [0.0; 3];
        for (k, c) in C1_SERIES.iter().enumerate() {
            let p = 2 * k as i32 + 3;
            let pf = p as f64;
            let gk = c * s.powi(k as i32);
            out[0] += gk * tau.powi(p);
            out[1] += gk * pf * tau.powi(p - 1);
            out[2] += gk * pf * (pf - 1.0) * tau.powi(p - 2);
        }
        return Ok(out);
    }
    let k = 3.0 / 8.0;
    Ok(if sign > 0.0 {
        let t = x.tanh();
        let f = 3.0 * x * t * t + t - x;
        let f1 = 2.0 * t * t + 6.0 * x * t * (1.0 - t * t);
        let f2 = 10.0 * t * (1.0 - t * t) + 6.0 * x * (1.0 - t * t) * (1.0 - 3.0 * t * t);
        [k * f / g.powi(3), k * f1 / (g * g), k * f2 / g]
    } else {
        let t = x.tan();
        let f = 3.0 * x * t * t - t + x;
        let f1 = 2.0 * t * t + 6.0 * x * t * (1.0 + t * t);
        let f2 = 10.0 * t * (1.0 + t * t) + 6.0 * x * (1.0 + t * t) * (1.0 + 3.0 * t * t);
        [k * f / g.powi(3), k * f1 / (g * g), k * f2 / g]
    })
}

/// `(3/(8γ³))[3γτ tanh²(γτ) + tanh(γτ) − γτ]`.
pub fn continuum_c2(params: &ModelParams, tau: f64) -> Result<f64> {
    Ok(continuum_c2_derivatives(params, tau)?[0])
}

#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    ClosedForm,
    /// Richardson extrapolation over the listed spacings.
    Extrapolated { deltas: Vec<f64>, richardson_order: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CTerm {
    pub value: f64,
    pub error_estimate: f64,
    pub provenance: Provenance,
}

/// `Δ^{3μ}(Λ)_0^{2μ}` at `Δ = τ/Λ`.
pub fn discrete_c_term(params: &ModelParams, tau: f64, lambda: usize, mu: usize) -> Result<f64> {
    if tau == 0.0 {
        return Ok(if mu == 0 { 1.0 } else { 0.0 });
    }
    let grid = build_grid(params.with_beta(tau)?, lambda)?;
    let table = lambda_table_for_grid(&grid, lambda, mu)?;
    Ok(grid.delta.powi(3 * mu as i32) * table.contraction(lambda, mu).unwrap())
}

/// Two Richardson sweeps for an expansion in powers of `Δ`; the
/// finest-level correction is the error estimate.
fn richardson(d: [f64; 3]) -> Result<(f64, f64)> {
    let step1 = (d[1] - d[0]).abs();
    let step2 = (d[2] - d[1]).abs();
    if step2 > step1 && step2 > 1e-15 * d[2].abs() {
        return Err(Error::NotConverged("Richardson extrapolation in the slice spacing"));
    }
    let r1a = 2.0 * d[1] - d[0];
    let r1b = 2.0 * d[2] - d[1];
    let r2 = (4.0 * r1b - r1a) / 3.0;
    Ok((r2, (r2 - r1b).abs()))
}

/// Continuum value of the μ-th term from the spacings `τ/64, τ/128, τ/256`.
pub fn extrapolate_c_term(params: &ModelParams, tau: f64, mu: usize) -> Result<CTerm> {
    if !(1..=3).contains(&mu) {
        return Err(Error::Domain {
            name: "mu",
            value: mu as f64,
            reason: "terms 1 to 3 are available",
        });
    }
    let lambdas = [EXTRAPOLATION_BASE, 2 * EXTRAPOLATION_BASE, 4 * EXTRAPOLATION_BASE];
    let d: Vec<f64> = lambdas
        .par_iter()
        .map(|&l| discrete_c_term(params, tau, l, mu))
        .collect::<Result<_>>()?;
    let (value, error_estimate) = richardson([d[0], d[1], d[2]])?;
    Ok(CTerm {
        value,
        error_estimate,
        provenance: Provenance::Extrapolated {
            deltas: lambdas.iter().map(|&l| tau / l as f64).collect(),
            richardson_order: 2,
        },
    })
}

fn check_order(order: usize) -> Result<()> {
    if !(1..=3).contains(&order) {
        return Err(Error::Domain {
            name: "order",
            value: order as f64,
            reason: "orders 1 to 3 are available",
        });
    }
    Ok(())
}

fn series_weight(params: &ModelParams, mu: usize) -> f64 {
    let x = params.a / (params.c * params.c);
    let f = [1.0, 1.0, 2.0, 6.0][mu];
    let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
    sign * x.powi(mu as i32) / f
}

/// `S = Σ_{μ≤order} (−1)^μ (a/c²)^μ/μ! C_μ(τ)`.
pub fn s_continuum(params: &ModelParams, tau: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    let mut s = 1.0 - params.a / (params.c * params.c) * continuum_c2(params, tau)?;
    if params.a == 0.0 {
        return Ok(1.0);
    }
    for mu in 2..=order {
        s += series_weight(params, mu) * extrapolate_c_term(params, tau, mu)?.value;
    }
    Ok(s)
}

/// `S, S', S''` from analytic μ=1 derivatives and central differences of
/// the extrapolated higher terms.
fn s_with_derivatives(params: &ModelParams, tau: f64, order: usize) -> Result<[f64; 3]> {
    let c1 = continuum_c2_derivatives(params, tau)?;
    let w1 = series_weight(params, 1);
    let mut out = [1.0 + w1 * c1[0], w1 * c1[1], w1 * c1[2]];
    if order < 2 || params.a == 0.0 {
        return Ok(out);
    }
    let scale = tau.max(1.0);
    let h1 = f64::EPSILON.powf(1.0 / 3.0) * scale;
    let h2 = f64::EPSILON.powf(0.25) * scale;
    let eval = |t: f64| -> Result<f64> {
        let mut s = 0.0;
        for mu in 2..=order {
            s += series_weight(params, mu) * extrapolate_c_term(params, t.abs(), mu)?.value;
        }
        Ok(s)
    };
    let mid = eval(tau)?;
    out[0] += mid;
    out[1] += (eval(tau + h1)? - eval(tau - h1)?) / (2.0 * h1);
    out[2] += (eval(tau + h2)? - 2.0 * mid + eval(tau - h2)?) / (h2 * h2);
    Ok(out)
}

fn potential_from(s: [f64; 3], tau: f64) -> Result<f64> {
    if s[0] <= 0.0 {
        return Err(Error::NonPositiveS { tau, value: s[0] });
    }
    let l1 = s[1] / s[0];
    let l2 = s[2] / s[0] - l1 * l1;
    Ok(-2.0 * l2 - 4.0 * l1 * l1)
}

/// `−2(ln S)'' − 4((ln S)')²`.
pub fn ggy_potential_term(params: &ModelParams, tau: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    if params.a == 0.0 {
        return Ok(0.0);
    }
    potential_from(s_with_derivatives(params, tau, order)?, tau)
}

/// `S` on `[0, τ_max]` with the higher terms extrapolated once on a
/// uniform grid and interpolated by local quintics.
#[derive(Debug, Clone)]
pub struct ContinuumSeries {
    pub params: ModelParams,
    pub order: usize,
    pub tau_max: f64,
    pub provenance: Vec<Provenance>,
    step: f64,
    /// Extrapolated `C_μ` at `kh`, for μ = 2..=order.
    nodes: Vec<Vec<f64>>,
}

const SERIES_NODES: usize = 256;

impl ContinuumSeries {
    pub fn build(params: ModelParams, tau_max: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        if !(tau_max > 0.0) {
            return Err(Error::Domain {
                name: "tau_max",
                value: tau_max,
                reason: "must be positive",
            });
        }
        let k = SERIES_NODES;
        let step = tau_max / k as f64;
        let mut provenance = vec![Provenance::ClosedForm, Provenance::ClosedForm];
        let mut nodes = Vec::new();
        if order >= 2 && params.a > 0.0 {
            let levels: Vec<_> = (0..3usize)
                .into_par_iter()
                .map(|l| {
                    let n = k << l;
                    let grid = build_grid(params.with_beta(tau_max)?, n)?;
                    let table = lambda_table_for_grid(&grid, n, order)?;
                    Ok((grid.delta, table))
                })
                .collect::<Result<_>>()?;
            for mu in 2..=order {
                let mut col = vec![0.0; k + 1];
                for (i, v) in col.iter_mut().enumerate().skip(1) {
                    let mut d = [0.0; 3];
                    for (l, (delta, table)) in levels.iter().enumerate() {
                        d[l] = delta.powi(3 * mu as i32) * table.contraction(i << l, mu).unwrap();
                    }
                    // the first nodes sit at a handful of slices, where the steps need not shrink
                    *v = richardson(d).map_or(2.0 * d[2] - d[1], |r| r.0);
                }
                nodes.push(col);
                provenance.push(Provenance::Extrapolated {
                    deltas: (0..3).map(|l| step / (1 << l) as f64).collect(),
                    richardson_order: 2,
                });
            }
        }
        Ok(ContinuumSeries {
            params,
            order,
            tau_max,
            provenance,
            step,
            nodes,
        })
    }

    /// `C_μ, C_μ', C_μ''` at `τ`.
    pub fn term(&self, mu: usize, tau: f64) -> Result<[f64; 3]> {
        if mu == 0 {
            return Ok([1.0, 0.0, 0.0]);
        }
        if mu == 1 {
            return continuum_c2_derivatives(&self.params, tau);
        }
        if mu > self.order {
            return Err(Error::Domain {
                name: "mu",
                value: mu as f64,
                reason: "beyond the order of this series",
            });
        }
        if tau < 0.0 || tau > self.tau_max * (1.0 + 1e-12) {
            return Err(Error::Domain {
                name: "tau",
                value: tau,
                reason: "outside the tabulated range",
            });
        }
        if self.nodes.is_empty() {
            return Ok([0.0; 3]);
        }
        Ok(interpolate(&self.nodes[mu - 2], self.step, tau))
    }
}

impl SProvider for ContinuumSeries {
    fn eval(&self, tau: f64) -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for mu in 0..=self.order {
            let w = if mu == 0 { 1.0 } else { series_weight(&self.params, mu) };
            if w == 0.0 {
                continue;
            }
            let t = self.term(mu, tau)?;
            for i in 0..3 {
                out[i] += w * t[i];
            }
        }
        Ok(out)
    }
}

/// Value and two derivatives of the local quintic through six nodes.
fn interpolate(y: &[f64], h: f64, tau: f64) -> [f64; 3] {
    let n = y.len();
    let pos = tau / h;
    let centre = pos.floor() as isize;
    let start = (centre - 2).clamp(0, n as isize - 6) as usize;
    let t = pos - start as f64;
    let mut out = [0.0; 3];
    for j in 0..6 {
        // basis polynomial ℓ_j(t) expanded in powers of t
        let mut coef = vec![1.0];
        let mut denom = 1.0;
        for m in 0..6 {
            if m == j {
                continue;
            }
            let mut next = vec![0.0; coef.len() + 1];
            for (p, c) in coef.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= c * m as f64;
            }
            coef = next;
            denom *= j as f64 - m as f64;
        }
        let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for (p, c) in coef.iter().enumerate().rev() {
            let pf = p as f64;
            v += c * t.powi(p as i32);
            if p >= 1 {
                d1 += c * pf * t.powi(p as i32 - 1);
            }
            if p >= 2 {
                d2 += c * pf * (pf - 1.0) * t.powi(p as i32 - 2);
            }
        }
        let w = y[start + j] / denom;
        out[0] += w * v;
        out[1] += w * d1 / h;
        out[2] += w * d2 / (h * h);
    }
    out
}
