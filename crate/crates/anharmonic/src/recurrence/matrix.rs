//! The triangular matrices 𝔸, ℂ, 𝕄 and the projector P, and the
//! recurrence `ℂ(Λ) = Σ 𝔸(Λ−1)·ℂ(Λ−1)·𝕄̃(Λ−1)` built from them.

use super::{a_coeff, binomial, LambdaTable};
use crate::contfrac::q_sequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Q_k = q_k/A^k` for `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct QValues<S> {
    pub a: S,
    pub q: Vec<S>,
}

impl<S: Scalar> QValues<S> {
    /// `A·Q_{k+1}·Q_k`.
    fn link(&self, k: usize) -> S {
        self.a.clone() * self.q[k + 1].clone() * self.q[k].clone()
    }
}

pub fn q_values<S: Scalar>(omega0: S, a: S, n: usize) -> Result<QValues<S>> {
    let b = omega0 - S::ratio(1, 2);
    let q = q_sequence(b, a.clone(), n);
    let mut scale = S::one();
    let mut out = Vec::with_capacity(n + 1);
    for (k, qk) in q.into_iter().enumerate() {
        if qk.is_zero() {
            return Err(Error::ZeroDenominator { n: k });
        }
        out.push(qk / scale.clone());
        scale = scale * a.clone();
    }
    Ok(QValues { a, q: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Lower triangular 𝔸.
    A,
    /// Upper triangular ℂ.
    C,
    /// Upper triangular 𝕄.
    M,
    /// Projector onto column `d`.
    P,
}

/// Dense storage; entries outside the `d`-minor are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMatrix<S> {
    pub kind: MatrixKind,
    pub d: usize,
    pub data: Vec<Vec<S>>,
}

impl<S: Scalar> TriMatrix<S> {
    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.data.first().map_or(0, Vec::len)
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r][c]
    }

    fn zeros(kind: MatrixKind, d: usize, rows: usize, cols: usize) -> Self {
        TriMatrix {
            kind,
            d,
            data: vec![vec![S::zero(); cols]; rows],
        }
    }
}

fn matmul<S: Scalar>(x: &[Vec<S>], y: &[Vec<S>]) -> Vec<Vec<S>> {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut s = S::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !y[k][c].is_zero() {
                            s = s + row[k].clone() * y[k][c].clone();
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Builds `kind^d(Λ)` inside the `μ`-sized frame.
///
/// 𝔸 uses `A·Q_{Λ+1}Q_Λ`; ℂ(Λ) for `Λ ≥ 2` reads `(Λ)_{2λ−p}^{2λ}` from
/// `table`, while ℂ(1) has its own closed entries; 𝕄 uses `Q_Λ⁴`.
pub fn matrix_build<S: Scalar>(
    kind: MatrixKind,
    d: usize,
    mu: usize,
    q: &QValues<S>,
    lambda: usize,
    table: Option<&LambdaTable<S>>,
) -> Result<TriMatrix<S>> {
    if d > mu {
        return Err(Error::Domain {
            name: "d",
            value: d as f64,
            reason: "the minor cannot exceed the frame",
        });
    }
    let needed = match kind {
        MatrixKind::A => lambda + 1,
        MatrixKind::C | MatrixKind::M => lambda,
        MatrixKind::P => 0,
    };
    if needed >= q.q.len() {
        return Err(Error::Domain {
            name: "Lambda",
            value: lambda as f64,
            reason: "not enough Q values supplied",
        });
    }
    Ok(match kind {
        MatrixKind::A => {
            let mut m = TriMatrix::zeros(kind, d, 2 * mu + 1, 2 * mu + 1);
            let link = q.link(lambda);
            for p in 0..=2 * d {
                for j in 0..=p {
                    let c: S = a_coeff((2 * d - j) as i64, (2 * d - p) as i64);
                    m.data[p][j] = c / link.powu((p - j) as u32);
                }
            }
            m
        }
        MatrixKind::C => {
            let mut m = TriMatrix::zeros(kind, d, 2 * mu + 1, mu + 1);
            if lambda == 0 {
                return Err(Error::Domain {
                    name: "Lambda",
                    value: 0.0,
                    reason: "the C matrices start at 1",
                });
            }
            let link = q.link(lambda - 1);
            for l in 0..=d {
                for p in 0..=2 * l {
                    m.data[p][l] = if lambda == 1 {
                        let c: S = a_coeff((2 * l) as i64, (2 * l - p) as i64);
                        q.q[0].powu(4 * l as u32) / link.powu(p as u32) * c
                    } else {
                        let t = table.ok_or(Error::Domain {
                            name: "Lambda",
                            value: lambda as f64,
                            reason: "C beyond the first step needs a table",
                        })?;
                        let entry = t.get(lambda, l, 2 * l - p).ok_or(Error::Domain {
                            name: "Lambda",
                            value: lambda as f64,
                            reason: "table too small",
                        })?;
                        link.powu((2 * l - p) as u32) * entry.clone()
                    };
                }
            }
            m
        }
        MatrixKind::M => {
            let mut m = TriMatrix::zeros(kind, d, mu + 1, mu + 1);
            let q4 = q.q[lambda].powu(4);
            for k in 0..=d {
                for l in 0..=k {
                    m.data[l][k] = S::from_u64(binomial(k as u64, l as u64)) * q4.powu((k - l) as u32);
                }
            }
            m
        }
        MatrixKind::P => {
            let mut m = TriMatrix::zeros(kind, d, mu + 1, mu + 1);
            m.data[d][d] = S::one();
            m
        }
    })
}

/// ℂ(Λ) in a frame of size `μ` by repeated matrix products; entry
/// `(2μ', μ')` is `(Λ)_0^{2μ'}`.
pub fn c_matrix_recurrence<S: Scalar>(omega0: S, a: S, lambda: usize, mu: usize) -> Result<TriMatrix<S>> {
    if lambda == 0 {
        return Err(Error::Domain {
            name: "Lambda",
            value: 0.0,
            reason: "the C matrices start at 1",
        });
    }
    let q = q_values(omega0, a, lambda + 1)?;
    let mut c = matrix_build(MatrixKind::C, mu, mu, &q, 1, None)?;
    for step in 2..=lambda {
        let mut next = TriMatrix::zeros(MatrixKind::C, mu, 2 * mu + 1, mu + 1);
        for d in 0..=mu {
            let a_mat = matrix_build(MatrixKind::A, d, mu, &q, step - 1, None)?;
            let m_mat = matrix_build(MatrixKind::M, d, mu, &q, step - 1, None)?;
            let p_mat = matrix_build(MatrixKind::P, d, mu, &q, 0, None)?;
            let mut minor = c.data.clone();
            for (r, row) in minor.iter_mut().enumerate() {
                for (col, v) in row.iter_mut().enumerate() {
                    if r > 2 * d || col > d {
                        *v = S::zero();
                    }
                }
            }
            let x = matmul(&matmul(&matmul(&a_mat.data, &minor), &m_mat.data), &p_mat.data);
            for p in 0..=2 * d {
                next.data[p][d] = x[p][d].clone();
            }
        }
        c = next;
    }
    Ok(c)
}
