//! Nested-sum solution of the ℂ recurrence with the operator
//! `D_ξ = (3/4)∂²_ξ + 3ξ∂³_ξ + ξ²∂⁴_ξ` applied as exact polynomial algebra.

use std::collections::BTreeMap;

use super::matrix::q_values;
use super::{a_coeff, binomial, factorial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::slicing::SliceGrid;

const MU_LIMIT: usize = 3;
const LAMBDA_LIMIT: usize = 16;

/// Laurent polynomial in one variable `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct XiPoly<S> {
    terms: BTreeMap<i64, S>,
}

impl<S: Scalar> XiPoly<S> {
    pub fn zero() -> Self {
        XiPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(exponent: i64, coeff: S) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    pub fn add_term(&mut self, exponent: i64, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&exponent) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(exponent, merged);
        }
    }

    pub fn coeff(&self, exponent: i64) -> S {
        self.terms.get(&exponent).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Sum of the coefficients, the value at `ξ = 1`.
    pub fn at_one(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, c| acc + c.clone())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|(e, c)| c.to_f64() * x.powi(*e as i32)).sum()
    }
}

/// `D_ξ^times` applied to `poly`. On `ξ^k` the operator gives
/// `k(k−1/2)(k−1)(k−3/2) ξ^{k−2}`.
pub fn d_xi_apply<S: Scalar>(poly: &XiPoly<S>, times: usize) -> XiPoly<S> {
    let mut cur = poly.clone();
    for _ in 0..times {
        let mut next = XiPoly::zero();
        for (e, c) in cur.terms() {
            let f = S::ratio(e * (2 * e - 1) * (e - 1) * (2 * e - 3), 4);
            next.add_term(e - 2, f * c.clone());
        }
        cur = next;
    }
    cur
}

fn nondecreasing(len: usize, upper: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let lo = cur.last().copied().unwrap_or(0);
    for v in lo..=upper {
        cur.push(v);
        nondecreasing(len, upper, out, cur);
        cur.pop();
    }
}

fn compositions(n: usize, parts: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() + 1 == parts {
        cur.push(n - cur.iter().sum::<usize>());
        out.push(cur.clone());
        cur.pop();
        return;
    }
    let left = n - cur.iter().sum::<usize>();
    for v in 0..=left {
        cur.push(v);
        compositions(n, parts, out, cur);
        cur.pop();
    }
}

/// `{ℂ(Λ)^{2μ}}_{2μ,2μ}` from the nested-sum formula.
pub fn c_matrix_closed_form<S: Scalar>(omega0: S, a: S, lambda: usize, mu: usize) -> Result<S> {
    if mu > MU_LIMIT {
        return Err(Error::CostLimit {
            what: "mu for the nested-sum form",
            limit: MU_LIMIT,
        });
    }
    if lambda > LAMBDA_LIMIT {
        return Err(Error::CostLimit {
            what: "Lambda for the nested-sum form",
            limit: LAMBDA_LIMIT,
        });
    }
    if lambda == 0 {
        return Err(Error::Domain {
            name: "Lambda",
            value: 0.0,
            reason: "the C matrices start at 1",
        });
    }
    let q = q_values(omega0, a.clone(), lambda + 1)?;
    let qv = &q.q;
    let link = |k: usize| a.clone() * qv[k + 1].clone() * qv[k].clone();
    let big_l = lambda;
    let p = 2 * mu;

    if big_l == 1 {
        let c: S = a_coeff(p as i64, 0);
        return Ok(c * qv[0].powu(4 * mu as u32) / link(0).powu(p as u32));
    }

    // x_k = 1/(A Q_{k+1} Q_k), k = 1..Λ−1
    let x: Vec<S> = (0..big_l).map(|k| if k == 0 { S::zero() } else { S::one() / link(k) }).collect();

    let mut seqs = Vec::new();
    nondecreasing(big_l - 1, mu, &mut seqs, &mut Vec::new());
    let mut total = S::zero();
    for s in seqs {
        // lam[0] = λ, lam[m−1] = I_m for m = 2..Λ, I_Λ = μ
        let mut lam = s;
        lam.push(mu);
        let mut weight = S::one();
        for m in 2..=big_l {
            let (hi, lo) = (lam[m - 1], lam[m - 2]);
            weight = weight
                * S::from_u64(binomial(hi as u64, lo as u64))
                * qv[m - 1].powu(4 * (hi - lo) as u32);
        }
        let l1 = lam[0];
        let big_i = |m: usize| lam[m - 1];
        let mut inner = S::zero();
        for j in 0..=2 * l1 {
            let c1: S = a_coeff((2 * l1) as i64, (2 * l1 - j) as i64);
            let c1 = qv[0].powu(4 * l1 as u32) / link(0).powu(j as u32) * c1;
            let n = p - j;
            let sixteen: u32 = (2..big_l).map(|m| (big_i(m + 1) - big_i(m)) as u32).sum();
            let pref = factorial::<S>((4 * big_i(2) - 2 * j) as u64)
                / (factorial::<S>((4 * big_i(big_l) - 2 * p) as u64) * factorial::<S>(n as u64))
                / S::from_u64(4).powu(n as u32)
                * S::from_u64(16).powu(sixteen);
            let mut comps = Vec::new();
            compositions(n, big_l - 1, &mut comps, &mut Vec::new());
            let mut chain = S::zero();
            for ns in comps {
                let mut coef = factorial::<S>(n as u64);
                for (k, &t) in ns.iter().enumerate() {
                    coef = coef / factorial::<S>(t as u64) * x[k + 1].powu(t as u32);
                }
                for m in 2..big_l {
                    let tail: usize = ns[m - 1..].iter().sum();
                    let e = 2 * big_i(m + 1) as i64 - p as i64 + tail as i64;
                    let poly = XiPoly::monomial(e, S::one());
                    coef = coef * d_xi_apply(&poly, big_i(m + 1) - big_i(m)).at_one();
                }
                chain = chain + coef;
            }
            inner = inner + pref * chain * c1;
        }
        total = total + weight * inner;
    }
    Ok(total)
}

pub fn c_matrix_closed_form_for_grid(grid: &SliceGrid, lambda: usize, mu: usize) -> Result<f64> {
    c_matrix_closed_form(grid.omega0, grid.a_cf, lambda, mu)
}
