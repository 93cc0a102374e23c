//! The generalized Gelfand–Yaglom equation
//! `F'' + 4F'(ln S)' = F(2b/c − 2(ln S)'' − 4((ln S)')²)`, its reduced form
//! `y'' = (2b/c)y` under `F = y/S²`, and `Z(β) = 1/√F(β)`.

use crate::continuum::{gamma_of, Branch, ContinuumSeries};
use crate::error::{Error, Result};
use crate::slicing::ModelParams;

/// Relative step-halving disagreement accepted by [`solve_ggy`].
const HALVING_TOLERANCE: f64 = 1e-6;
/// Default number of steps on `[0, β]`.
pub const DEFAULT_STEPS: usize = 4096;

/// Supplies `S(τ)`, `S'(τ)`, `S''(τ)`.
pub trait SProvider {
    fn eval(&self, tau: f64) -> Result<[f64; 3]>;
}

impl<F> SProvider for F
where
    F: Fn(f64) -> Result<[f64; 3]>,
{
    fn eval(&self, tau: f64) -> Result<[f64; 3]> {
        self(tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DirectOde,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GgyTrajectory {
    pub tau_grid: Vec<f64>,
    pub s_values: Vec<f64>,
    pub f_values: Vec<f64>,
    pub f_prime_beta: f64,
    pub z_beta: f64,
    /// `|F_h(β) − F_{h/2}(β)|/15`.
    pub error_estimate: f64,
    /// Set when `F ≤ 0` somewhere on the grid.
    pub nonpositive: bool,
    pub method: Method,
}

/// Fixed-step classical RK4 for `x' = f(t, x)` on a 2-vector, keeping
/// every node. The end stages sample `f` just inside the step, so a
/// coefficient jump on a node is seen from the correct side.
fn rk4<G>(rhs: G, x0: [f64; 2], beta: f64, steps: usize) -> Result<Vec<[f64; 2]>>
where
    G: Fn(f64, [f64; 2]) -> Result<[f64; 2]>,
{
    let h = beta / steps as f64;
    let inset = 1e-8 * h;
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = x0;
    out.push(x);
    let add = |x: [f64; 2], k: [f64; 2], s: f64| [x[0] + s * k[0], x[1] + s * k[1]];
    for i in 0..steps {
        let t = i as f64 * h;
        let k1 = rhs(t + inset, x)?;
        let k2 = rhs(t + 0.5 * h, add(x, k1, 0.5 * h))?;
        let k3 = rhs(t + 0.5 * h, add(x, k2, 0.5 * h))?;
        let k4 = rhs(t + h - inset, add(x, k3, h))?;
        for j in 0..2 {
            x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        out.push(x);
    }
    Ok(out)
}

fn steps_for(beta: f64, h: f64) -> Result<usize> {
    if !(h > 0.0) || !(beta > 0.0) {
        return Err(Error::Domain {
            name: "h",
            value: h,
            reason: "step and interval must be positive",
        });
    }
    Ok(((beta / h).round() as usize).max(1))
}

fn ln_derivatives(s: &dyn SProvider, tau: f64) -> Result<(f64, f64)> {
    let [v, d1, d2] = s.eval(tau)?;
    if v <= 0.0 {
        return Err(Error::NonPositiveS { tau, value: v });
    }
    let l1 = d1 / v;
    Ok((l1, d2 / v - l1 * l1))
}

fn integrate_f(params: &ModelParams, s: &dyn SProvider, beta: f64, steps: usize) -> Result<Vec<[f64; 2]>> {
    let k = 2.0 * params.b / params.c;
    let [s0, s0p, _] = s.eval(0.0)?;
    if s0 <= 0.0 {
        return Err(Error::NonPositiveS { tau: 0.0, value: s0 });
    }
    // F(0) = 1/S², F'(0) = (1/S²)' so that y = F S² starts flat
    let f0 = 1.0 / (s0 * s0);
    let fp0 = -2.0 * s0p / (s0 * s0 * s0);
    rk4(
        |t, x| {
            let (l1, l2) = ln_derivatives(s, t)?;
            Ok([x[1], x[0] * (k - 2.0 * l2 - 4.0 * l1 * l1) - 4.0 * x[1] * l1])
        },
        [f0, fp0],
        beta,
        steps,
    )
}

/// Integrates the generalized equation with step `h` and once more with
/// `h/2` for the error estimate.
pub fn solve_ggy(params: &ModelParams, s: &dyn SProvider, beta: f64, h: f64) -> Result<GgyTrajectory> {
    let steps = steps_for(beta, h)?;
    let coarse = integrate_f(params, s, beta, steps)?;
    let fine = integrate_f(params, s, beta, 2 * steps)?;
    let f_beta = fine[2 * steps][0];
    let diff = (coarse[steps][0] - f_beta).abs();
    if diff > HALVING_TOLERANCE * f_beta.abs().max(1e-300) {
        return Err(Error::NotConverged("step halving in the Gelfand-Yaglom solver"));
    }
    let hh = beta / steps as f64;
    let tau_grid: Vec<f64> = (0..=steps).map(|i| i as f64 * hh).collect();
    let s_values = tau_grid.iter().map(|&t| s.eval(t).map(|v| v[0])).collect::<Result<Vec<_>>>()?;
    let f_values: Vec<f64> = coarse.iter().map(|x| x[0]).collect();
    let nonpositive = fine.iter().any(|x| x[0] <= 0.0);
    Ok(GgyTrajectory {
        tau_grid,
        s_values,
        f_values,
        f_prime_beta: fine[2 * steps][1],
        z_beta: if f_beta > 0.0 { f_beta.powf(-0.5) } else { f64::NAN },
        error_estimate: diff / 15.0,
        nonpositive,
        method: Method::DirectOde,
    })
}

/// `y(β)` of `y'' = (2b/c)y`, `y(0) = 1`, `y'(0) = 0`.
pub fn harmonic_y(params: &ModelParams, beta: f64) -> f64 {
    match gamma_of(params) {
        Branch::Free => 1.0,
        Branch::Hyperbolic(g) => (g * beta).cosh(),
        Branch::Trigonometric(g) => (g * beta).cos(),
    }
}

/// `Z(β)` at the given order of `S`.
pub fn z_beta(params: &ModelParams, order: usize, method: Method) -> Result<f64> {
    let beta = params.beta;
    let y = harmonic_y(params, beta);
    if y <= 0.0 {
        if let Branch::Trigonometric(g) = gamma_of(params) {
            return Err(Error::BranchPole { value: g * beta });
        }
    }
    let series = ContinuumSeries::build(*params, beta, order)?;
    match method {
        Method::ClosedForm => {
            let s = series.eval_s(beta)?;
            if s <= 0.0 {
                return Err(Error::NonPositiveS { tau: beta, value: s });
            }
            Ok(s / y.sqrt())
        }
        Method::DirectOde => {
            let traj = solve_ggy(params, &series, beta, beta / DEFAULT_STEPS as f64)?;
            if traj.nonpositive {
                return Err(Error::NotPositiveDefinite { index: 0 });
            }
            Ok(traj.z_beta)
        }
    }
}

impl ContinuumSeries {
    pub fn eval_s(&self, tau: f64) -> Result<f64> {
        Ok(SProvider::eval(self, tau)?[0])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeDepSolution {
    pub tau_grid: Vec<f64>,
    pub y_values: Vec<f64>,
    /// `I(τ) = −2b(τ)/c` on the grid.
    pub invariant: Vec<f64>,
    /// `y/S²` when an `S` was supplied.
    pub f_values: Option<Vec<f64>>,
    pub y_beta: f64,
    pub error_estimate: f64,
}

/// `y'' = (2b(τ)/c)y`, `y(0) = 1`, `y'(0) = 0`.
pub fn solve_timedep<B>(b_fn: B, c: f64, beta: f64, h: f64, s: Option<&dyn SProvider>) -> Result<TimeDepSolution>
where
    B: Fn(f64) -> f64,
{
    if !(c > 0.0) {
        return Err(Error::Domain {
            name: "c",
            value: c,
            reason: "must be positive",
        });
    }
    let steps = steps_for(beta, h)?;
    let rhs = |t: f64, x: [f64; 2]| Ok([x[1], 2.0 * b_fn(t) / c * x[0]]);
    let coarse = rk4(rhs, [1.0, 0.0], beta, steps)?;
    let fine = rk4(rhs, [1.0, 0.0], beta, 2 * steps)?;
    let hh = beta / steps as f64;
    let tau_grid: Vec<f64> = (0..=steps).map(|i| i as f64 * hh).collect();
    let y_values: Vec<f64> = coarse.iter().map(|x| x[0]).collect();
    let f_values = match s {
        Some(p) => Some(
            tau_grid
                .iter()
                .zip(&y_values)
                .map(|(&t, &y)| {
                    let v = p.eval(t)?[0];
                    if v <= 0.0 {
                        return Err(Error::NonPositiveS { tau: t, value: v });
                    }
                    Ok(y / (v * v))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(TimeDepSolution {
        invariant: tau_grid.iter().map(|&t| -2.0 * b_fn(t) / c).collect(),
        tau_grid,
        y_values,
        f_values,
        y_beta: fine[2 * steps][0],
        error_estimate: (coarse[steps][0] - fine[2 * steps][0]).abs() / 15.0,
    })
}

/// Braces of the endpoint-clamped correction, `−3coth x + 2x[coth²x + 1/(2sinh²x)]`.
fn moeler_braces(x: f64) -> f64 {
    if x < 0.5 {
        const C: [f64; 7] = [
            4.0 / 15.0,
            -4.0 / 105.0,
            8.0 / 1575.0,
            -4.0 / 6237.0,
            5528.0 / 70945875.0,
            -8.0 / 868725.0,
            57872.0 / 54273594375.0,
        ];
        let x2 = x * x;
        return x * x2 * C.iter().rev().fold(0.0, |acc, c| acc * x2 + c);
    }
    let coth = 1.0 / x.tanh();
    let sinh = x.sinh();
    -3.0 * coth + 2.0 * x * (coth * coth + 0.5 / (sinh * sinh))
}

/// `S(β) = 1 − (3a/(32c²γ³)){−3coth(γβ) + 2γβ[coth²(γβ) + 1/(2sinh²(γβ))]}`.
pub fn moeler_correction(params: &ModelParams, beta: f64) -> Result<f64> {
    let pref = 3.0 * params.a / (32.0 * params.c * params.c);
    match gamma_of(params) {
        Branch::Free => Ok(1.0 - pref * 4.0 / 15.0 * beta.powi(3)),
        Branch::Hyperbolic(g) => {
            let x = g * beta;
            Ok(1.0 - pref / g.powi(3) * moeler_braces(x))
        }
        Branch::Trigonometric(_) => Err(Error::Domain {
            name: "b",
            value: params.b,
            reason: "the clamped-endpoint correction needs b >= 0",
        }),
    }
}
