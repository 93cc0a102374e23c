use std::cell::Cell;
use std::f64::consts::PI;

use quadrature::double_exponential::integrate;

use super::OracleResult;
use crate::error::{check_finite, Error, Result};
use crate::slicing::ModelParams;
use crate::specfun::{ln_gamma, ln_pcf_d};

/// `ln 10^18`: integrand drop, relative to its peak, at the truncation point.
const DROP: f64 = 41.446_531_673_892_82;
const PANELS: usize = 12;

/// Real roots of `4Ax³ + 2Bx + C`, ascending (`A > 0`).
fn cubic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let g = |x: f64| 4.0 * a * x * x * x + 2.0 * b * x + c;
    let bound = 1.0 + (2.0 * b.abs()).max(c.abs()) / (4.0 * a);
    let mut edges = vec![-bound];
    if b < 0.0 {
        let t = (-b / (6.0 * a)).sqrt();
        edges.push(-t);
        edges.push(t);
    }
    edges.push(bound);
    let mut roots: Vec<f64> = Vec::new();
    for w in edges.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (glo, ghi) = (g(lo), g(hi));
        if glo == 0.0 {
            roots.push(lo);
            continue;
        }
        if glo * ghi > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if (g(mid) > 0.0) == (glo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * x.abs().max(1.0));
    roots
}

/// Point beyond `start` (in direction `dir`) where `f − f_min` reaches `drop`;
/// `f` increases monotonically past `start`.
fn exit_point(f: &dyn Fn(f64) -> f64, start: f64, dir: f64, fmin: f64, drop: f64) -> f64 {
    let mut step = 1e-3_f64.max(start.abs() * 1e-3);
    let mut far = start + dir * step;
    while f(far) - fmin < drop {
        step *= 2.0;
        far = start + dir * step;
    }
    let (mut near, mut far) = (start, far);
    for _ in 0..200 {
        let mid = 0.5 * (near + far);
        if mid == near || mid == far {
            break;
        }
        if f(mid) - fmin < drop {
            near = mid;
        } else {
            far = mid;
        }
    }
    far
}

fn i1_quadrature(a: f64, b: f64, c: f64, drop: f64, tol: f64) -> Result<OracleResult> {
    for v in [a, b, c] {
        check_finite("integrate_i1", v)?;
    }
    if !(a > 0.0) {
        return Err(Error::Domain {
            name: "A",
            value: a,
            reason: "the quartic coefficient must be positive",
        });
    }
    let f = move |x: f64| a * x.powi(4) + b * x * x + c * x;
    let roots = cubic_roots(a, b, c);
    let fmin = roots.iter().map(|&r| f(r)).fold(f64::INFINITY, f64::min);
    let left = exit_point(&f, roots[0], -1.0, fmin, drop);
    let right = exit_point(&f, *roots.last().unwrap(), 1.0, fmin, drop);

    let mut breaks = vec![left];
    breaks.extend(roots.iter().copied());
    breaks.push(right);
    let mut points = Vec::new();
    for w in breaks.windows(2) {
        for k in 0..PANELS {
            points.push(w[0] + (w[1] - w[0]) * k as f64 / PANELS as f64);
        }
    }
    points.push(right);

    let g = |x: f64| (-(f(x) - fmin)).exp();
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut cost = 0u64;
    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let out = integrate(g, w[0], w[1], tol * (w[1] - w[0]));
        sum += out.integral;
        err += out.error_estimate;
        cost += out.num_function_evaluations as u64;
    }
    // tails: ∫_{x*}^∞ e^{−(f−fmin)} ≤ e^{−drop}/f'(x*)
    let df = |x: f64| 4.0 * a * x.powi(3) + 2.0 * b * x + c;
    err += (-drop).exp() * (1.0 / df(right).abs() + 1.0 / df(left).abs());
    // rounding in the exponent, of size ε·|f| over the window, and in the panel sum
    let spread = f(left).abs().max(f(right).abs()) + fmin.abs();
    err += sum * f64::EPSILON * (4.0 * spread + points.len() as f64);
    let scale = (-fmin).exp();
    Ok(OracleResult {
        value: scale * sum,
        error_estimate: scale * err,
        cost,
    })
}

/// `∫ exp(−(Ax⁴ + Bx² + Cx)) dx` over the real line by double-exponential
/// quadrature, cut where the integrand falls to `10^{−18}` of its peak.
pub fn integrate_i1(a: f64, b: f64, c: f64) -> Result<OracleResult> {
    i1_quadrature(a, b, c, DROP, 1e-16)
}

/// [`integrate_i1`] with a doubled truncation depth and a tighter tolerance.
pub fn integrate_i1_refined(a: f64, b: f64, c: f64) -> Result<OracleResult> {
    i1_quadrature(a, b, c, 2.0 * DROP, 1e-18)
}

/// Partial sum through `m = M` of
/// `√π (2A)^{−1/4} e^{z²/4} Σ ξ^m/m! D_{−m−1/2}(z)`, `ξ = C²/(4√(2A))`,
/// `z = B/√(2A)`.
pub fn i1_series(a: f64, b: f64, c: f64, m_max: usize) -> Result<f64> {
    for v in [a, b, c] {
        check_finite("i1_series", v)?;
    }
    if !(a > 0.0) {
        return Err(Error::Domain {
            name: "A",
            value: a,
            reason: "the quartic coefficient must be positive",
        });
    }
    if m_max < 1 {
        return Err(Error::Domain {
            name: "M",
            value: m_max as f64,
            reason: "at least one term beyond m = 0 is required",
        });
    }
    let root = (2.0 * a).sqrt();
    let z = b / root;
    let xi = c * c / (4.0 * root);
    let top = if xi == 0.0 { 0 } else { m_max };
    let mut logs = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let (ln_d, _) = ln_pcf_d(-(m as f64) - 0.5, z)?;
        let ln_xi_m = if m == 0 { 0.0 } else { m as f64 * xi.ln() };
        logs.push(ln_xi_m - ln_gamma(m as f64 + 1.0) + ln_d + 0.25 * z * z);
    }
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - peak).exp()).sum();
    Ok((0.5 * PI.ln() - 0.25 * (2.0 * a).ln() + peak + sum.ln()).exp())
}

/// `h_i(x) = ∫ K(x,y) e^{−ΔV(y)} h_{i+1}(y) dy`, `h_{N+1} ≡ 1`, with `K` the
/// normalized heat kernel of one slice.
struct SliceChain {
    n: usize,
    delta: f64,
    b: f64,
    a: f64,
    kinetic: f64,
    window: f64,
    bound: f64,
    tol: f64,
    cost: Cell<u64>,
}

impl SliceChain {
    fn new(p: &ModelParams, n: usize, drop: f64, tol: f64) -> Self {
        let delta = p.beta / n as f64;
        let kinetic = p.c / delta;
        let sigma = (1.0 / kinetic).sqrt();
        // potential cut: Δ(V(y) − V_min) = drop
        let vmin = if p.b < 0.0 && p.a > 0.0 { -p.b * p.b / (4.0 * p.a) } else { 0.0 };
        let target = vmin + drop / delta;
        let bound = if p.a > 0.0 {
            ((-p.b + (p.b * p.b + 4.0 * p.a * target).sqrt()) / (2.0 * p.a)).sqrt()
        } else if p.b > 0.0 {
            (target / p.b).sqrt()
        } else {
            f64::INFINITY
        };
        Self {
            n,
            delta,
            b: p.b,
            a: p.a,
            kinetic,
            window: (2.0 * drop).sqrt() * sigma,
            bound,
            tol,
            cost: Cell::new(0),
        }
    }

    fn h(&self, i: usize, x: f64) -> f64 {
        let lo = (x - self.window).max(-self.bound);
        let hi = (x + self.window).min(self.bound);
        if lo >= hi {
            return 0.0;
        }
        let norm = (self.kinetic / (2.0 * PI)).sqrt();
        let integrand = |y: f64| {
            self.cost.set(self.cost.get() + 1);
            let y2 = y * y;
            let e = -0.5 * self.kinetic * (y - x).powi(2) - self.delta * (self.b * y2 + self.a * y2 * y2);
            let rest = if i < self.n { self.h(i + 1, y) } else { 1.0 };
            norm * e.exp() * rest
        };
        // split at the kernel centre so each panel is one-sided
        let mid = x.clamp(lo, hi);
        let mut s = 0.0;
        for (p, q) in [(lo, mid), (mid, hi)] {
            if q > p {
                s += integrate(integrand, p, q, self.tol).integral;
            }
        }
        s
    }
}

const BRUTEFORCE_MAX_N: usize = 3;

/// `Z_N` by nested quadrature of the slice integral, `φ_0 = 0`, `N ≤ 3`.
/// The estimate is the change under a deeper truncation and tighter
/// tolerance; the refined value is returned.
pub fn zn_bruteforce(params: &ModelParams, n: usize) -> Result<OracleResult> {
    if n == 0 {
        return Err(Error::Domain {
            name: "N",
            value: 0.0,
            reason: "at least one slice is needed",
        });
    }
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::CostLimit {
            what: "zn_bruteforce slice count",
            limit: BRUTEFORCE_MAX_N,
        });
    }
    let coarse = SliceChain::new(params, n, DROP, 1e-13);
    let fine = SliceChain::new(params, n, 1.5 * DROP, 1e-15);
    let v0 = coarse.h(1, 0.0);
    let v1 = fine.h(1, 0.0);
    Ok(OracleResult {
        value: v1,
        error_estimate: (v1 - v0).abs(),
        cost: coarse.cost.get() + fine.cost.get(),
    })
}

/// `(J+1)!/x^{J+1}·(e^{−x} − Σ_{j≤J} (−x)^j/j!)`.
fn normalized_taylor_remainder(x: f64, j_order: u32) -> f64 {
    let n = j_order as f64 + 1.0;
    if x < n + 1.0 {
        // Σ_{i≥0} (−1)^{J+1+i} x^i (J+1)!/(J+1+i)!
        let mut term = if j_order % 2 == 0 { -1.0 } else { 1.0 };
        let mut sum = term;
        for i in 1..500 {
            term *= -x / (n + i as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        // (J+1)! x^{−J−1} e^{−x} − Σ_j (−1)^j (J+1)!/(j! x^{J+1−j})
        let ln_fact = ln_gamma(n + 1.0);
        let mut sum = (ln_fact - n * x.ln() - x).exp();
        for j in 0..=j_order {
            let jf = j as f64;
            let mag = (ln_fact - ln_gamma(jf + 1.0) - (n - jf) * x.ln()).exp();
            sum -= if j % 2 == 0 { mag } else { -mag };
        }
        sum
    }
}

/// `𝒟_{−m−1/2}(z)` minus its Poincaré sum through `j = J`, from the integral
/// `(1/Γ(m+1/2)) ∫ s^{m−1/2} e^{−s} r_J(s²/(2z²)) ds`, `r_J` the Taylor
/// remainder of `e^{−x}`.
pub fn poincare_remainder(m: f64, z: f64, j_order: u32) -> Result<OracleResult> {
    check_finite("poincare_remainder", m)?;
    check_finite("poincare_remainder", z)?;
    if !(z > 0.0) || m < 0.0 {
        return Err(Error::Domain {
            name: "z",
            value: z,
            reason: "needs z > 0 and m >= 0",
        });
    }
    let n = j_order as f64 + 1.0;
    let power = m - 0.5 + 2.0 * n;
    let ln_norm = ln_gamma(power + 1.0);
    let two_z2 = 2.0 * z * z;
    let g = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        (power * s.ln() - s - ln_norm).exp() * normalized_taylor_remainder(s * s / two_z2, j_order)
    };
    let peak = power.max(1.0);
    let top = peak + 14.0 * peak.sqrt() + 60.0;
    let width = top / 40.0;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut cost = 0u64;
    for k in 0..40 {
        let out = integrate(g, k as f64 * width, (k + 1) as f64 * width, 1e-18 * width);
        sum += out.integral;
        err += out.error_estimate;
        cost += out.num_function_evaluations as u64;
    }
    let ln_pref = ln_norm - ln_gamma(m + 0.5) - n * two_z2.ln() - ln_gamma(n + 1.0);
    let pref = ln_pref.exp();
    Ok(OracleResult {
        value: pref * sum,
        error_estimate: pref * err,
        cost,
    })
}
