use super::{hyp1f2, pochhammer};
use crate::error::{check_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareResult {
    pub value: f64,
    /// Remainder bound; `f64::INFINITY` outside `2√m ≤ z`.
    pub bound: f64,
    pub order_used: u32,
}

/// Temme's bound on the remainder of the Poincaré series of `𝒟_{−m−1/2}(z)`
/// at order `j_order`. Infinite outside `2√m ≤ z`.
///
/// The `₁F₂` argument is `1 − 4m/z²`, which sweeps `[0, 1]` over the validity
/// region. With `1 − m²/z²` the factor turns negative for moderate `m`.
pub fn temme_remainder_bound(m: f64, z: f64, j_order: u32) -> f64 {
    if j_order == 0 || !(2.0 * m.sqrt() <= z) {
        return f64::INFINITY;
    }
    let z2 = z * z;
    let gap = z2 - 2.0 * m;
    let theta = (m * m / 4.0 + 3.0 / 16.0).abs()
        + (2.0 * m / z2) * (1.0 + m / (2.0 * z2)) * z2 / (gap * gap);
    let x = 1.0 - 4.0 * m / z2;
    let jf = j_order as f64;
    let f_main = hyp1f2(0.5 * jf, 0.5, 0.5 * jf + 1.0, x).unwrap_or(f64::INFINITY);
    let f_exp = hyp1f2(0.5, 0.5, 1.5, x).unwrap_or(f64::INFINITY);
    let mut lead = 2.0 * z2 / gap * pochhammer(m + 0.5, 2 * j_order);
    // (J−1)! (2z²)^J
    for k in 1..j_order {
        lead /= k as f64;
    }
    lead /= (2.0 * z2).powi(j_order as i32);
    let b = lead * f_main * (4.0 * theta / gap * f_exp).exp();
    if b.is_nan() {
        f64::INFINITY
    } else {
        b
    }
}

/// Truncated Poincaré series `Σ_{j=0}^{J} (−1)^j (m+1/2)_{2j} / (j! (2z²)^j)`
/// with its remainder bound.
pub fn poincare_expand(m: f64, z: f64, j_order: u32) -> Result<PoincareResult> {
    check_finite("poincare_expand", m)?;
    check_finite("poincare_expand", z)?;
    if j_order == 0 {
        return Err(Error::Domain {
            name: "J",
            value: 0.0,
            reason: "the remainder bound needs J >= 1",
        });
    }
    if !(z > 0.0) || m < 0.0 {
        return Err(Error::Domain {
            name: "z",
            value: z,
            reason: "poincare_expand needs z > 0 and m >= 0",
        });
    }
    let p = m + 0.5;
    let x = 2.0 * z * z;
    let mut term = 1.0;
    let mut value = 1.0;
    for j in 0..j_order {
        let jf = j as f64;
        term *= -(p + 2.0 * jf) * (p + 2.0 * jf + 1.0) / ((jf + 1.0) * x);
        value += term;
    }
    Ok(PoincareResult {
        value,
        bound: temme_remainder_bound(m, z, j_order),
        order_used: j_order,
    })
}
