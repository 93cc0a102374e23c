//! Special functions: gamma and Pochhammer symbols, parabolic cylinder
//! functions, the Poincaré expansion of the scaled function with its
//! remainder bound, `₁F₂`, and the Temme exponent.

mod pcf;
mod poincare;

pub use pcf::{ln_gamma_pcf_scaled, ln_pcf_d, ln_pcf_scaled, pcf_d, pcf_scaled};
pub(crate) use pcf::ln_weber_integral;
pub use poincare::{poincare_expand, temme_remainder_bound, PoincareResult};

use twofloat::TwoFloat;

use crate::error::{check_finite, Error, Result};

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `1/Γ(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        return 0.0;
    }
    if x.abs() < 170.0 {
        return 1.0 / libm::tgamma(x);
    }
    let (l, s) = libm::lgamma_r(x);
    s as f64 * (-l).exp()
}

/// `(ln|(x)_n|, sign)`; sign is 0 when a factor vanishes.
pub fn ln_pochhammer(x: f64, n: u32) -> (f64, f64) {
    if x > 0.0 && n > 64 {
        return (ln_gamma(x + n as f64) - ln_gamma(x), 1.0);
    }
    let mut ln_abs = 0.0;
    let mut sign = 1.0;
    for k in 0..n {
        let f = x + k as f64;
        if f == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        ln_abs += f.abs().ln();
        if f < 0.0 {
            sign = -sign;
        }
    }
    (ln_abs, sign)
}

/// Rising factorial `x(x+1)⋯(x+n−1)`.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    let mut p = 1.0_f64;
    for k in 0..n {
        p *= x + k as f64;
        if !p.is_finite() || (p != 0.0 && p.abs() < 1e-290) {
            let (l, s) = ln_pochhammer(x, n);
            return s * l.exp();
        }
    }
    p
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `₁F₂(a1; b1, b2; x)`, summed in double-double arithmetic.
pub fn hyp1f2(a1: f64, b1: f64, b2: f64, x: f64) -> Result<f64> {
    for v in [a1, b1, b2, x] {
        check_finite("hyp1f2", v)?;
    }
    if is_nonpositive_integer(b1) || is_nonpositive_integer(b2) {
        return Err(Error::Domain {
            name: "b",
            value: if is_nonpositive_integer(b1) { b1 } else { b2 },
            reason: "lower parameters of 1F2 must not be non-positive integers",
        });
    }
    let mut term = TwoFloat::from(1.0);
    let mut sum = TwoFloat::from(1.0);
    for k in 0..100_000 {
        let kf = k as f64;
        term = term * (a1 + kf) * x / (b1 + kf) / (b2 + kf) / (kf + 1.0);
        sum += term;
        if term == 0.0 {
            break;
        }
        let ratio = ((a1 + kf + 1.0) * x / ((b1 + kf + 1.0) * (b2 + kf + 1.0) * (kf + 2.0))).abs();
        if ratio < 0.5 && f64::from(term).abs() < 1e-17 * f64::from(sum).abs() {
            break;
        }
    }
    Ok(f64::from(sum))
}

/// Quantities of the uniform expansion in `λ = a/z²`: `(λ, w₀, 𝒜)`.
pub fn temme_exponent(a: f64, z: f64) -> Result<(f64, f64, f64)> {
    check_finite("temme_exponent", a)?;
    check_finite("temme_exponent", z)?;
    if !(z > 0.0) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            reason: "temme_exponent needs z > 0",
        });
    }
    if a < 0.0 {
        return Err(Error::Domain {
            name: "a",
            value: a,
            reason: "temme_exponent needs a >= 0",
        });
    }
    let lambda = a / (z * z);
    if lambda == 0.0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let root = (1.0 + 4.0 * lambda).sqrt();
    let w0 = 2.0 * lambda / (root + 1.0);
    // λ ln λ − λ ln w₀ = λ ln((√(1+4λ)+1)/2)
    let big_a = 0.5 * w0 * w0 + w0 - lambda + lambda * (0.5 * (root + 1.0)).ln();
    Ok((lambda, w0, big_a))
}

/// Leading large-order form `(1/√2) exp[(ν/2)(ln(−ν) − 1) − √(−ν) z]`.
pub fn large_order_asymptotic(nu: f64, z: f64) -> Result<f64> {
    ln_large_order_asymptotic(nu, z).map(f64::exp)
}

/// Logarithm of [`large_order_asymptotic`].
pub fn ln_large_order_asymptotic(nu: f64, z: f64) -> Result<f64> {
    check_finite("large_order_asymptotic", nu)?;
    check_finite("large_order_asymptotic", z)?;
    if !(nu < 0.0) {
        return Err(Error::Domain {
            name: "nu",
            value: nu,
            reason: "large-order form needs nu < 0",
        });
    }
    if z.abs() >= (-nu).sqrt() {
        return Err(Error::Domain {
            name: "z",
            value: z,
            reason: "large-order form needs |z| < sqrt(|nu|)",
        });
    }
    let s = -nu;
    Ok(-0.5 * std::f64::consts::LN_2 + 0.5 * nu * (s.ln() - 1.0) - s.sqrt() * z)
}

/// `ln(e^{x²/4} D_{−p}(x))` for `p > 0`, any real `x`.
fn ln_exp_scaled_negative(p: f64, x: f64) -> f64 {
    if x > 0.0 {
        -p * x.ln() + ln_weber_integral(p, 1.0, 0.5 / (x * x)) - ln_gamma(p)
    } else {
        ln_weber_integral(p, x, 0.5) - ln_gamma(p)
    }
}

/// Both sides of `e^{x²/4} Σ_k (ν)_k/k! t^k D_{−ν−k}(x) = e^{(x−t)²/4} D_{−ν}(x−t)`,
/// the left side truncated after `terms` terms.
pub fn shift_identity_check(nu: f64, x: f64, t: f64, terms: usize) -> (f64, f64) {
    let mut lhs = 0.0;
    let mut coef = 1.0; // (ν)_k t^k / k!
    for k in 0..terms {
        let kf = k as f64;
        if k > 0 {
            coef *= (nu + kf - 1.0) * t / kf;
        }
        if coef == 0.0 {
            break;
        }
        lhs += coef * ln_exp_scaled_negative(nu + kf, x).exp();
    }
    let rhs = ln_exp_scaled_negative(nu, x - t).exp();
    (lhs, rhs)
}
