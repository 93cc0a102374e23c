//! Parabolic cylinder functions `D_ν(z)` and the scaled combination
//! `𝒟_{−m−1/2}(z) = z^{m+1/2} e^{z²/4} D_{−m−1/2}(z)`.
//!
//! Method selection:
//!
//! * `z = 0`: closed form `√π 2^{ν/2} / Γ((1−ν)/2)`.
//! * `ν < 0`, `z > 0`: the scaled function `𝒟` is taken from its Poincaré
//!   series when that series reaches a term below `1e−17` before the terms
//!   start to grow (`z²` well above `|ν|²`), otherwise from the integral
//!   `Γ(p)^{-1} ∫ s^{p−1} e^{−s−s²/(2z²)} ds` evaluated in log space.
//! * `ν < 0`, `z < 0`: integral `e^{−z²/4} Γ(p)^{-1} ∫ t^{p−1} e^{−zt−t²/2} dt`.
//! * `ν > 0` integer: `e^{−z²/4} He_ν(z)` by the Hermite recurrence.
//! * `ν > 0` otherwise, `z > 0`: upward order recurrence
//!   `D_{ν+1} = z D_ν − ν D_{ν−1}` from the two negative orders `ν − ⌈ν⌉` and
//!   `ν − ⌈ν⌉ − 1`.
//! * `ν > 0` otherwise, `z < 0`: even/odd Maclaurin solutions through Kummer's
//!   `M`, summed in double-double with running rescaling. Upward recurrence is
//!   unstable there: the leading `e^{z²/4}|z|^{−ν−1}` parts cancel at every step.
//!
//! Both non-integer paths report [`Error::PrecisionLoss`] when more than a
//! few digits cancel.
//!
//! All work is done with a separate log-magnitude so that `e^{±z²/4}` is
//! never formed.

use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use twofloat::TwoFloat;

use super::{ln_gamma, rgamma};
use crate::error::{check_finite, Error, Result};

const GL_POINTS: usize = 20;
/// Integrand values this far (in log units) below the peak are dropped.
const LOG_CUTOFF: f64 = 60.0;
const MAX_PANELS: usize = 20_000;

fn gl_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(GL_POINTS)
            .expect("fixed Gauss-Legendre degree")
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// `ln ∫₀^∞ s^{p−1} exp(−l·s − q·s²) ds` for `p > 0` and either `q > 0` or
/// `q = 0, l > 0`.
pub(crate) fn ln_weber_integral(p: f64, l: f64, q: f64) -> f64 {
    debug_assert!(p > 0.0 && q >= 0.0 && (q > 0.0 || l > 0.0));
    let g = |s: f64| (p - 1.0) * s.ln() - l * s - q * s * s;
    let dg = |s: f64| (p - 1.0) / s - l - 2.0 * q * s;
    let d2g = |s: f64| -(p - 1.0) / (s * s) - 2.0 * q;

    // interior maximum of g, if any
    let s_peak = if q > 0.0 {
        let disc = l * l + 8.0 * q * (p - 1.0);
        if disc < 0.0 {
            0.0
        } else if l > 0.0 {
            2.0 * (p - 1.0) / (l + disc.sqrt())
        } else {
            (-l + disc.sqrt()) / (4.0 * q)
        }
    } else if p > 1.0 {
        (p - 1.0) / l
    } else {
        0.0
    }
    .max(0.0);

    let mut s0: f64 = 0.25;
    if l != 0.0 {
        s0 = s0.min(0.25 / l.abs());
    }
    if q > 0.0 {
        s0 = s0.min(0.25 / q.sqrt());
    }

    let start = s_peak.max(s0);
    let g_ref = g(start).max(g(s0));
    let step_at = |s: f64| {
        let d1 = dg(s);
        let scale = 2.0 / (d2g(s).abs() + 0.25 * d1 * d1).sqrt();
        scale.min(s)
    };

    let mut edges = vec![start];
    let mut a = start;
    while edges.len() < MAX_PANELS {
        let b = a + step_at(a);
        edges.push(b);
        a = b;
        if g(b) < g_ref - LOG_CUTOFF && dg(b) < 0.0 {
            break;
        }
    }

    // below the peak
    let mut low = Vec::new();
    let mut reached_origin = start <= s0;
    if start > s0 {
        let mut b = start;
        loop {
            let step = step_at(b).min(0.5 * b);
            let a = (b - step).max(s0);
            low.push(a);
            b = a;
            if a <= s0 {
                reached_origin = true;
                break;
            }
            if p >= 1.0 && g(a) < g_ref - LOG_CUTOFF {
                break;
            }
            if low.len() > MAX_PANELS {
                break;
            }
        }
    }
    low.reverse();
    low.extend(edges);
    let edges = low;

    let rule = gl_rule();
    let mut total = 0.0;
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut acc = 0.0;
        for &(x, wt) in rule {
            acc += wt * (g(mid + half * x) - g_ref).exp();
        }
        total += half * acc;
    }

    if reached_origin {
        // ∫₀^{s0} by termwise integration of the Taylor series of exp(−ls−qs²)
        let (ls, qs) = (l * s0, q * s0 * s0);
        let (mut d_prev, mut d) = (0.0, 1.0);
        let mut sum = 1.0 / p;
        for k in 0..400 {
            let kf = k as f64;
            let d_next = (-ls * d - 2.0 * qs * d_prev) / (kf + 1.0);
            d_prev = d;
            d = d_next;
            let term = d / (p + kf + 1.0);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() && d_prev.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        total += (p * s0.ln() + sum.ln() - g_ref).exp();
    }
    g_ref + total.ln()
}

/// Poincaré series of `𝒟` summed to convergence, if it converges to `1e−17`
/// before the terms start to grow.
fn scaled_by_series(m: f64, z: f64) -> Option<f64> {
    let p = m + 0.5;
    let x = 2.0 * z * z;
    let mut term = 1.0_f64;
    let mut sum = 1.0;
    for j in 0..200 {
        let jf = j as f64;
        let ratio = (p + 2.0 * jf) * (p + 2.0 * jf + 1.0) / ((jf + 1.0) * x);
        if ratio >= 1.0 {
            return None;
        }
        term *= -ratio;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Some(sum);
        }
    }
    None
}

/// `ln 𝒟_{−m−1/2}(z)`.
pub fn ln_pcf_scaled(m: f64, z: f64) -> Result<f64> {
    check_finite("ln_pcf_scaled", m)?;
    check_finite("ln_pcf_scaled", z)?;
    if !(z > 0.0) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            reason: "the scaled function needs z > 0",
        });
    }
    if !(m >= 0.0) {
        return Err(Error::Domain {
            name: "m",
            value: m,
            reason: "the scaled function needs m >= 0",
        });
    }
    if let Some(v) = scaled_by_series(m, z) {
        return Ok(v.ln());
    }
    let p = m + 0.5;
    Ok(ln_weber_integral(p, 1.0, 0.5 / (z * z)) - ln_gamma(p))
}

/// `𝒟_{−m−1/2}(z) = z^{m+1/2} e^{z²/4} D_{−m−1/2}(z)`, a number in `(0, 1]`.
pub fn pcf_scaled(m: f64, z: f64) -> Result<f64> {
    ln_pcf_scaled(m, z).map(f64::exp)
}

/// `ln(Γ(m+1/2) 𝒟_{−m−1/2}(z))`, computed without forming the gamma function.
pub fn ln_gamma_pcf_scaled(m: f64, z: f64) -> Result<f64> {
    let p = m + 0.5;
    if z > 0.0 && m >= 0.0 {
        if let Some(v) = scaled_by_series(m, z) {
            return Ok(v.ln() + ln_gamma(p));
        }
        return Ok(ln_weber_integral(p, 1.0, 0.5 / (z * z)));
    }
    ln_pcf_scaled(m, z).map(|v| v + ln_gamma(p))
}

/// `D_ν(z)` as `(ln|D|, sign)`; sign 0 means the value is exactly zero.
pub fn ln_pcf_d(nu: f64, z: f64) -> Result<(f64, f64)> {
    check_finite("pcf_d", nu)?;
    check_finite("pcf_d", z)?;
    if nu == 0.0 {
        return Ok((-0.25 * z * z, 1.0));
    }
    if z == 0.0 {
        let r = rgamma(0.5 * (1.0 - nu));
        if r == 0.0 {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        let ln_abs = 0.5 * std::f64::consts::PI.ln() + 0.5 * nu * std::f64::consts::LN_2
            + r.abs().ln();
        return Ok((ln_abs, r.signum()));
    }
    if nu < 0.0 {
        return Ok((ln_pcf_negative_order(-nu, z), 1.0));
    }
    if nu.fract() == 0.0 {
        return Ok(hermite_form(nu as usize, z));
    }
    if z > 0.0 {
        upward_recurrence(nu, z)
    } else {
        maclaurin_form(nu, z)
    }
}

/// `ln D_{−p}(z)` for `p > 0`; the value is positive for every real `z`.
fn ln_pcf_negative_order(p: f64, z: f64) -> f64 {
    if z > 0.0 {
        let m = p - 0.5;
        let ln_scaled = if m >= 0.0 {
            match scaled_by_series(m, z) {
                Some(v) => v.ln(),
                None => ln_weber_integral(p, 1.0, 0.5 / (z * z)) - ln_gamma(p),
            }
        } else {
            ln_weber_integral(p, 1.0, 0.5 / (z * z)) - ln_gamma(p)
        };
        -p * z.ln() - 0.25 * z * z + ln_scaled
    } else {
        -0.25 * z * z + ln_weber_integral(p, z, 0.5) - ln_gamma(p)
    }
}

fn hermite_form(n: usize, z: f64) -> (f64, f64) {
    // He_n(z) with running rescaling
    let (mut h_prev, mut h) = (1.0_f64, z);
    let mut ln_scale = 0.0;
    if n == 0 {
        return (-0.25 * z * z, 1.0);
    }
    for k in 1..n {
        let next = z * h - k as f64 * h_prev;
        h_prev = h;
        h = next;
        let mag = h.abs().max(h_prev.abs());
        if mag > 1e150 || (mag < 1e-150 && mag > 0.0) {
            ln_scale += mag.ln();
            h /= mag;
            h_prev /= mag;
        }
    }
    if h == 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    (ln_scale + h.abs().ln() - 0.25 * z * z, h.signum())
}

/// Digits allowed to cancel in the upward recurrence before giving up.
const MAX_CANCELLATION: f64 = 1e5;

fn upward_recurrence(nu: f64, z: f64) -> Result<(f64, f64)> {
    let steps = nu.ceil() as usize;
    let nu0 = nu - steps as f64;
    // values as mantissa * exp(ln_scale)
    let l_prev = ln_pcf_negative_order(1.0 - nu0, z);
    let l_cur = ln_pcf_negative_order(-nu0, z);
    let ln_scale = l_prev.max(l_cur);
    let mut ln_scale = ln_scale;
    let mut y_prev = (l_prev - ln_scale).exp();
    let mut y = (l_cur - ln_scale).exp();
    let mut loss = 1.0_f64;
    let mut order = nu0;
    for _ in 0..steps {
        let a = z * y;
        let b = order * y_prev;
        let next = a - b;
        let biggest = a.abs().max(b.abs());
        if next != 0.0 && biggest > 0.0 {
            loss = loss.max(biggest / next.abs());
        }
        y_prev = y;
        y = next;
        order += 1.0;
        let mag = y.abs().max(y_prev.abs());
        if mag > 1e100 || (mag < 1e-100 && mag > 0.0) {
            ln_scale += mag.ln();
            y /= mag;
            y_prev /= mag;
        }
    }
    if loss > MAX_CANCELLATION || y == 0.0 {
        return Err(Error::PrecisionLoss("pcf_d order recurrence"));
    }
    Ok((ln_scale + y.abs().ln(), y.signum()))
}

/// `D_ν(z)` for real order and argument.
///
/// Results below the smallest normal double are returned as `0`; results
/// above the largest double are reported as [`Error::Overflow`].
pub fn pcf_d(nu: f64, z: f64) -> Result<f64> {
    let (ln_abs, sign) = ln_pcf_d(nu, z)?;
    if sign == 0.0 {
        return Ok(0.0);
    }
    if ln_abs > f64::MAX.ln() {
        return Err(Error::Overflow("pcf_d"));
    }
    Ok(sign * ln_abs.exp())
}

/// `M(a, b, x)` for `x ≥ 0` as `(ln scale, mantissa)`.
fn kummer_m_scaled(a: f64, b: f64, x: f64) -> (f64, TwoFloat) {
    let mut ln_scale = 0.0;
    let mut term = TwoFloat::from(1.0);
    let mut sum = TwoFloat::from(1.0);
    for k in 0..200_000 {
        let kf = k as f64;
        // divide by an f64: twofloat's DD/DD quotient is only f64-accurate
        term = term * (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
        if term == 0.0 {
            break;
        }
        let mag = f64::from(sum).abs().max(f64::from(term).abs());
        if mag > 1e200 {
            ln_scale += mag.ln();
            sum /= mag;
            term /= mag;
        }
        if kf > x && f64::from(term).abs() < 1e-25 * f64::from(sum).abs() {
            break;
        }
    }
    (ln_scale, sum)
}

fn maclaurin_form(nu: f64, z: f64) -> Result<(f64, f64)> {
    let x = 0.5 * z * z;
    let sqrt_pi_ln = 0.5 * std::f64::consts::PI.ln();
    // D_ν(0) and D'_ν(0) as signed reciprocal gammas times known magnitudes
    let r0 = rgamma(0.5 * (1.0 - nu));
    let r1 = rgamma(-0.5 * nu);
    let (l1, m1) = kummer_m_scaled(-0.5 * nu, 0.5, x);
    let (l2, m2) = kummer_m_scaled(0.5 * (1.0 - nu), 1.5, x);
    let ln_c1 = sqrt_pi_ln + 0.5 * nu * std::f64::consts::LN_2 + l1;
    let ln_c2 = sqrt_pi_ln + 0.5 * (nu + 1.0) * std::f64::consts::LN_2 + l2 + z.abs().ln();
    let common = ln_c1.max(ln_c2);
    let t1 = m1 * TwoFloat::from(r0 * (ln_c1 - common).exp());
    // −D'_ν(0) · z with z < 0 gives +|z|
    let t2 = m2 * TwoFloat::from(r1 * (ln_c2 - common).exp());
    let total = t1 + t2;
    let big = f64::from(t1).abs().max(f64::from(t2).abs());
    let v = f64::from(total);
    if v == 0.0 || big / v.abs() > 1e4 {
        return Err(Error::PrecisionLoss("pcf_d Maclaurin series"));
    }
    Ok((common - x * 0.5 + v.abs().ln(), v.signum()))
}
