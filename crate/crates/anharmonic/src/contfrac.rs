//! The continued fraction `ω_i = 1 − A²/ω_{i−1}`, `ω_0 = 1/2 + B`, and its
//! convergents `ω_n = p_n/q_n` in closed form.
//!
//! Roots `ρ_{1,2} = (1 ± √(1−4A²))/2` are complex for `4A² > 1` (negative
//! `b`); the closed forms are then evaluated in complex arithmetic and the
//! real part returned. Within `|1−4A²| < 1e−10` the double-root form
//! `q_n = (2 + 4Bn)(1/2)^n` is used.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::slicing::SliceGrid;

const DEGENERACY: f64 = 1e-10;

/// `ω_0, …, ω_n` by direct iteration.
pub fn omega_sequence<S: Scalar>(omega0: S, a: S, n: usize) -> Result<Vec<S>> {
    let a2 = a.clone() * a;
    let mut out = Vec::with_capacity(n + 1);
    out.push(omega0);
    for i in 1..=n {
        let prev = out[i - 1].clone();
        if prev.is_zero() {
            return Err(Error::OmegaBlowUp { index: i - 1 });
        }
        let next = S::one() - a2.clone() / prev;
        if !next.to_f64().is_finite() {
            return Err(Error::OmegaBlowUp { index: i });
        }
        out.push(next);
    }
    Ok(out)
}

/// `ω_n` by `n`-fold iteration.
pub fn omega_iterate(omega0: f64, a: f64, n: usize) -> Result<f64> {
    Ok(*omega_sequence(omega0, a, n)?.last().unwrap())
}

/// `q_0 … q_n` from `q_n = q_{n−1} − A²q_{n−2}`, `q_0 = 2`, `q_1 = 1 + 2B`.
pub fn q_sequence<S: Scalar>(b: S, a: S, n: usize) -> Vec<S> {
    let a2 = a.clone() * a;
    let mut q = vec![S::from_u64(2), S::one() + S::from_u64(2) * b];
    for i in 2..=n.max(1) {
        let next = q[i - 1].clone() - a2.clone() * q[i - 2].clone();
        q.push(next);
    }
    q.truncate(n + 1);
    q
}

/// `p_0 … p_n` from the same recurrence with `p_0 = 1 + 2B`,
/// `p_1 = 1 + 2B − 2A²`.
pub fn p_sequence<S: Scalar>(b: S, a: S, n: usize) -> Vec<S> {
    let a2 = a.clone() * a;
    let two = S::from_u64(2);
    let p0 = S::one() + two.clone() * b;
    let p1 = p0.clone() - two * a2.clone();
    let mut p = vec![p0, p1];
    for i in 2..=n.max(1) {
        let next = p[i - 1].clone() - a2.clone() * p[i - 2].clone();
        p.push(next);
    }
    p.truncate(n + 1);
    p
}

/// Closed-form data of the convergents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergentState {
    pub a: f64,
    pub b: f64,
    pub rho1: Complex64,
    pub rho2: Complex64,
    pub w1: Complex64,
    pub w2: Complex64,
    pub wt1: Complex64,
    pub wt2: Complex64,
    pub degenerate: bool,
}

impl ConvergentState {
    pub fn new(b: f64, a: f64) -> Result<Self> {
        Self::with_degeneracy_threshold(b, a, DEGENERACY)
    }

    /// As [`ConvergentState::new`] with a caller-chosen switch to the
    /// double-root form; `0` forces the generic form.
    pub fn with_degeneracy_threshold(b: f64, a: f64, threshold: f64) -> Result<Self> {
        for (name, v) in [("B", b), ("A", a)] {
            if !v.is_finite() {
                return Err(Error::Domain {
                    name,
                    value: v,
                    reason: "continued-fraction constants must be finite",
                });
            }
        }
        if a <= 0.0 {
            return Err(Error::Domain {
                name: "A",
                value: a,
                reason: "A must be positive",
            });
        }
        let disc = 1.0 - 4.0 * a * a;
        let degenerate = disc.abs() < threshold;
        let s = Complex64::new(disc, 0.0).sqrt();
        let one = Complex64::new(1.0, 0.0);
        let rho1 = 0.5 * (one + s);
        let rho2 = 0.5 * (one - s);
        let (w1, w2, wt1, wt2) = if degenerate {
            let z = Complex64::new(0.0, 0.0);
            (z, z, z, z)
        } else {
            let t = 2.0 * b / s;
            let half_sum = 0.5 * (1.0 + 2.0 * b);
            (one + t, one - t, half_sum + 0.5 * (s + t), half_sum - 0.5 * (s + t))
        };
        Ok(Self {
            a,
            b,
            rho1,
            rho2,
            w1,
            w2,
            wt1,
            wt2,
            degenerate,
        })
    }

    pub fn from_grid(grid: &SliceGrid) -> Result<Self> {
        Self::new(grid.b_cf, grid.a_cf)
    }

    /// `Q_n = q_n/A^n`.
    pub fn q_scaled(&self, n: usize) -> f64 {
        if self.degenerate {
            let nf = n as f64;
            return (2.0 + 4.0 * self.b * nf) * (0.5 / self.a).powf(nf);
        }
        let n = n as i32;
        let v = self.w1 * (self.rho1 / self.a).powi(n) + self.w2 * (self.rho2 / self.a).powi(n);
        debug_assert!(v.im.abs() <= 1e-9 * v.re.abs().max(1.0));
        v.re
    }

    /// Size of the largest term in `Q_n`, the cancellation scale.
    fn q_scaled_magnitude(&self, n: usize) -> f64 {
        if self.degenerate {
            let nf = n as f64;
            return (2.0 + 4.0 * self.b.abs() * nf) * (0.5 / self.a).powf(nf);
        }
        let n = n as i32;
        (self.w1 * (self.rho1 / self.a).powi(n))
            .norm()
            .max((self.w2 * (self.rho2 / self.a).powi(n)).norm())
    }

    pub fn q(&self, n: usize) -> f64 {
        self.a.powi(n as i32) * self.q_scaled(n)
    }

    /// `p_n`, evaluated from its own constants `w̃_{1,2}`.
    pub fn p(&self, n: usize) -> f64 {
        if self.degenerate {
            return self.q(n + 1);
        }
        let n = n as i32;
        let v = self.wt1 * self.rho1.powi(n) + self.wt2 * self.rho2.powi(n);
        v.re
    }

    /// `ω_n = p_n/q_n = A·Q_{n+1}/Q_n`.
    pub fn omega(&self, n: usize) -> Result<f64> {
        let qn = self.q_scaled(n);
        if qn.abs() <= 64.0 * f64::EPSILON * self.q_scaled_magnitude(n) {
            return Err(Error::ZeroDenominator { n });
        }
        Ok(self.a * self.q_scaled(n + 1) / qn)
    }
}

/// `(p_n, q_n, ω_n)` from the closed form.
pub fn convergent_closed_form(b: f64, a: f64, n: usize) -> Result<(f64, f64, f64)> {
    let st = ConvergentState::new(b, a)?;
    let omega = st.omega(n)?;
    Ok((st.p(n), st.q(n), omega))
}

pub fn q_scaled(state: &ConvergentState, n: usize) -> f64 {
    state.q_scaled(n)
}

/// `b_j = Σ_{k=j}^{Λ−1} 1/(Q_{k+1}Q_k)`.
pub fn b_sequence(state: &ConvergentState, j: usize, lambda: usize) -> Result<f64> {
    if j >= lambda {
        return Err(Error::Domain {
            name: "j",
            value: j as f64,
            reason: "b_j needs 0 <= j < Lambda",
        });
    }
    let mut sum = 0.0;
    let mut q_next = state.q_scaled(lambda);
    for k in (j..lambda).rev() {
        let q_k = state.q_scaled(k);
        sum += 1.0 / (q_next * q_k);
        q_next = q_k;
    }
    Ok(sum)
}
