//! The twelve acceptance criteria. Each runs to completion and reports
//! PASS or FAIL with the measured figures; an error inside a criterion is
//! a FAIL for that criterion only.

use std::time::Instant;

use anharmonic::contfrac::{omega_sequence, ConvergentState};
use anharmonic::continuum::{continuum_c2, ggy_potential_term, s_continuum};
use anharmonic::ggy::{moeler_correction, solve_ggy, z_beta, Method};
use anharmonic::oracles::{
    bridge_coupling_derivative, coupling_derivative, i1_series, integrate_i1, zn_bruteforce, zn_gaussian,
};
use anharmonic::recurrence::{c_matrix_closed_form, c_matrix_recurrence, lambda_table};
use anharmonic::remainders::{certify_decay, log_k0_rule, log_log_slope};
use anharmonic::scalar::Scalar;
use anharmonic::slicing::{build_grid, zn_multisum};
use anharmonic::specfun::{pcf_scaled, poincare_expand, shift_identity_check};
use anharmonic::{ModelParams, Result};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Suite;
use crate::figures::{abscissae, figure_csv, figure_defaults, figure_rows, FigureSpec, FIGURE_POINTS};

/// Criteria that fail for reasons outside the implementation. Criterion 11
/// compares the printed clamped-endpoint correction with the bridge moment,
/// which comes out four times larger (ratio 4.000 ± 0.001 on every tested
/// parameter set).
pub const KNOWN_UNATTAINABLE: &[u8] = &[11];

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub suite: Suite,
    pub seed: u64,
    /// Multiplies every numerical tolerance; zero forces failures.
    pub tolerance_scale: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            suite: Suite::Full,
            seed: 2024,
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn known_unattainable(&self) -> bool {
        KNOWN_UNATTAINABLE.contains(&self.id)
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let note = if !self.passed && self.known_unattainable() {
            " [known unattainable]"
        } else {
            ""
        };
        format!("criterion {:>2} {verdict} {}: {}{note}", self.id, self.title, self.detail)
    }
}

type Check = fn(&Options) -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, Check); 12] = [
    (1, "one-dimensional series vs quadrature", c1_series_vs_quadrature),
    (2, "N-slice exactness", c2_slice_exactness),
    (3, "harmonic chain", c3_harmonic_chain),
    (4, "first term end to end", c4_first_term),
    (5, "recurrence vs closed form", c5_recurrence_closed_form),
    (6, "continued-fraction identities", c6_continued_fraction),
    (7, "Poincare bound soundness", c7_poincare_bound),
    (8, "shift identity", c8_shift_identity),
    (9, "method agreement", c9_method_agreement),
    (10, "remainder certification", c10_remainder),
    (11, "clamped-endpoint correction", c11_clamped),
    (12, "figure emission", c12_figures),
];

/// Runs the criteria lazily, in order.
pub fn run_each(opts: &Options) -> impl Iterator<Item = Outcome> + '_ {
    CRITERIA.iter().map(move |&(id, title, check)| {
        let (passed, detail) = match check(opts) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        Outcome {
            id,
            title,
            passed,
            detail,
        }
    })
}

pub fn run(opts: &Options) -> Vec<Outcome> {
    run_each(opts).collect()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn params(a: f64, b: f64, c: f64, beta: f64) -> Result<ModelParams> {
    ModelParams::new(a, b, c, beta)
}

fn c1_series_vs_quadrature(o: &Options) -> Result<(bool, String)> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let (a, b, c) = (rng.gen_range(0.1..2.0), rng.gen_range(-1.0..2.0), rng.gen_range(0.0..2.0));
        let q = integrate_i1(a, b, c)?.value;
        worst = worst.max(rel(i1_series(a, b, c, 120)?, q));
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        worst < 1e-8 * o.tolerance_scale && secs < 10.0,
        format!("max relative error {worst:.2e} over 25 triples with M = 120, {secs:.2} s"),
    ))
}

const SLICE_SETS: [[f64; 4]; 10] = [
    [0.1, 1.0, 1.0, 1.0],
    [0.5, 0.5, 1.0, 0.5],
    [1.0, 2.0, 1.0, 1.0],
    [0.05, 0.0, 1.0, 1.0],
    [0.2, -0.2, 1.0, 1.0],
    [0.1, 5.0, 0.5, 1.0],
    [2.0, 1.0, 2.0, 0.5],
    [0.3, 1.0, 0.5, 1.5],
    [0.01, 1.0, 1.0, 1.0],
    [1.0, 0.0, 1.0, 1.5],
];

fn c2_slice_exactness(o: &Options) -> Result<(bool, String)> {
    let start = Instant::now();
    let (sets, slices): (&[[f64; 4]], &[usize]) = match o.suite {
        Suite::Quick => (&SLICE_SETS[..3], &[1, 2]),
        Suite::Full => (&SLICE_SETS, &[1, 2, 3]),
    };
    let mut worst: f64 = 0.0;
    for s in sets {
        let p = params(s[0], s[1], s[2], s[3])?;
        for &n in slices {
            let brute = zn_bruteforce(&p, n)?.value;
            worst = worst.max(rel(zn_multisum(&build_grid(p, n)?, 40)?, brute));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        worst < 1e-6 * o.tolerance_scale && secs < 300.0,
        format!(
            "max relative error {worst:.2e} over {} sets, N in {slices:?}, K0 = 40, {secs:.1} s",
            sets.len()
        ),
    ))
}

fn c3_harmonic_chain(o: &Options) -> Result<(bool, String)> {
    let p = params(0.0, 1.0, 1.0, 1.0)?;
    let exact = 2f64.sqrt().cosh().powf(-0.5);
    let values: Vec<f64> = (6..=12).map(|k| zn_gaussian(&p, 1 << k)).collect::<Result<_>>()?;
    let ratios: Vec<f64> = values
        .windows(2)
        .map(|w| (w[0] - exact) / (w[1] - exact))
        .collect();
    let first_order = ratios.iter().all(|r| (r - 2.0).abs() < 0.1 * o.tolerance_scale);
    let extrapolated = 2.0 * values[6] - values[5];
    let ext_err = rel(extrapolated, exact);
    let mut worst: f64 = 0.0;
    for (b, c, beta) in [(1.0, 1.0, 1.0), (5.0, 0.5, 1.0), (-0.5, 1.0, 1.0), (0.0, 1.0, 7.0)] {
        let q = params(0.0, b, c, beta)?;
        let y = match b {
            b if b > 0.0 => ((2.0 * b / c).sqrt() * beta).cosh(),
            b if b < 0.0 => ((-2.0 * b / c).sqrt() * beta).cos(),
            _ => 1.0,
        };
        for m in [Method::ClosedForm, Method::DirectOde] {
            worst = worst.max((z_beta(&q, 1, m)? - y.powf(-0.5)).abs());
        }
    }
    Ok((
        first_order && ext_err < 1e-6 * o.tolerance_scale && worst < 1e-10 * o.tolerance_scale,
        format!(
            "error ratios {} for N = 2^6..2^12, extrapolated error {ext_err:.1e}, z_beta(a=0) max error {worst:.1e}",
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(",")
        ),
    ))
}

fn c4_first_term(o: &Options) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (b, c, beta) in [(1.0, 1.0, 1.0), (5.0, 0.5, 1.0), (0.0, 1.0, 1.0)] {
        let p = params(0.0, b, c, beta)?;
        let d = coupling_derivative(&p, 512)? * c * c;
        worst = worst.max(rel(d, continuum_c2(&p, beta)?));
    }
    let mut free: f64 = 0.0;
    for beta in [0.5, 1.0, 2.0] {
        free = free.max(rel(continuum_c2(&params(0.1, 0.0, 1.0, beta)?, beta)?, beta * beta * beta));
    }
    Ok((
        worst < 0.01 * o.tolerance_scale && free <= 4.0 * f64::EPSILON * o.tolerance_scale,
        format!("max relative deviation {worst:.2e} at N = 512; b = 0 vs beta^3: {free:.1e}"),
    ))
}

fn c5_recurrence_closed_form(_: &Options) -> Result<(bool, String)> {
    type Q = BigRational;
    let omega_a = |u: Q, v: Q| (v / u.clone(), Q::one() / (Q::from_u64(2) * u));
    let cases = [
        omega_a(Q::ratio(1, 1), Q::ratio(1, 2)),
        omega_a(Q::ratio(11, 10), Q::ratio(6, 10)),
        omega_a(Q::ratio(3, 2), Q::ratio(1, 1)),
    ];
    let mut checked = 0;
    let mut mismatches = 0;
    for (w0, a) in cases {
        let table = lambda_table(w0.clone(), a.clone(), 6, 3)?;
        for lambda in 1..=6 {
            let cm = c_matrix_recurrence(w0.clone(), a.clone(), lambda, 3)?;
            for mu in 0..=3 {
                let t = table.contraction(lambda, mu).unwrap();
                let closed = c_matrix_closed_form(w0.clone(), a.clone(), lambda, mu)?;
                checked += 1;
                if &closed != t || cm.get(2 * mu, mu) != t {
                    mismatches += 1;
                }
            }
        }
    }
    Ok((
        mismatches == 0,
        format!("{mismatches} exact mismatches in {checked} rational comparisons (Lambda <= 6, mu <= 3)"),
    ))
}

fn c6_continued_fraction(o: &Options) -> Result<(bool, String)> {
    let mut worst_pq: f64 = 0.0;
    let mut worst_cf: f64 = 0.0;
    let mut gap = f64::INFINITY;
    for b in [-0.5, 0.5, 1.0, 5.0, 1e-4] {
        let p = params(0.1, b, 1.0, 0.05)?;
        let st = ConvergentState::from_grid(&build_grid(p, 10)?)?;
        gap = gap.min((1.0 - 4.0 * st.a * st.a).abs());
        let omegas = omega_sequence(0.5 + st.b, st.a, 200)?;
        for (n, w) in omegas.iter().enumerate() {
            worst_pq = worst_pq.max(rel(st.p(n), st.q(n + 1)));
            worst_cf = worst_cf.max(rel(st.omega(n)?, *w));
        }
    }
    let tol = 1e-12 * o.tolerance_scale;
    Ok((
        worst_pq < tol && worst_cf < tol,
        format!("p_n vs q_(n+1) {worst_pq:.1e}, closed form vs iteration {worst_cf:.1e} (n <= 200, smallest |1-4A^2| = {gap:.1e})"),
    ))
}

fn c7_poincare_bound(o: &Options) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 7);
    let mut violations = 0;
    let mut tightest = f64::INFINITY;
    for _ in 0..500 {
        let m: f64 = rng.gen_range(0.0..30.0);
        let z = 2.0 * m.sqrt() + rng.gen_range(0.05..40.0);
        let j = rng.gen_range(1..=6u32);
        let r = poincare_expand(m, z, j)?;
        let err = (pcf_scaled(m, z)? - r.value).abs();
        if err > r.bound * o.tolerance_scale {
            violations += 1;
        }
        if err > 0.0 {
            tightest = tightest.min(r.bound / err);
        }
    }
    Ok((
        violations == 0,
        format!("{violations} violations over 500 draws with 2 sqrt(m) <= z, smallest bound/error {tightest:.2}"),
    ))
}

fn c8_shift_identity(o: &Options) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 8);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let nu = rng.gen_range(0.1..5.0);
        let x = rng.gen_range(-2.0..6.0);
        let t = rng.gen_range(-2.0..2.0);
        let (l, r) = shift_identity_check(nu, x, t, 200);
        worst = worst.max(rel(l, r));
    }
    Ok((worst < 1e-9 * o.tolerance_scale, format!("max relative residual {worst:.1e} over 50 draws")))
}

fn c9_method_agreement(o: &Options) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for a in [0.0, 0.05, 0.1] {
        for b in [0.5, 1.0, 5.0] {
            for c in [0.5, 1.0] {
                for beta in [0.5, 1.0] {
                    let p = params(a, b, c, beta)?;
                    let d = z_beta(&p, 3, Method::DirectOde)?;
                    worst = worst.max((d - z_beta(&p, 3, Method::ClosedForm)?).abs());
                }
            }
        }
    }
    let p = params(0.0, 1.0, 1.0, 1.0)?;
    let unit = |_: f64| Ok([1.0, 0.0, 0.0]);
    let exact = 2f64.sqrt().cosh();
    let hs = [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0];
    let errs: Vec<f64> = hs
        .iter()
        .map(|&h| Ok((solve_ggy(&p, &unit, 1.0, h)?.f_values.last().unwrap() - exact).abs()))
        .collect::<Result<_>>()?;
    let slope = log_log_slope(&hs, &errs);
    Ok((
        worst < 1e-6 * o.tolerance_scale && (slope - 4.0).abs() < 0.2 * o.tolerance_scale,
        format!("max |direct - closed| {worst:.1e} over 36 points, step-convergence slope {slope:.3}"),
    ))
}

fn c10_remainder(_: &Options) -> Result<(bool, String)> {
    let p = params(0.1, 1.0, 1.0, 1.0)?;
    let ns = [8, 16, 32, 64];
    let cert = certify_decay(&p, &ns, log_k0_rule(3.0), 2, 2)?;
    let control = certify_decay(&p, &ns, log_k0_rule(3.0), 0, 2)?;
    let positive = cert.budgets.iter().chain(&control.budgets).all(|b| b.total > 0.0);
    Ok((
        cert.certified() && !control.certified() && control.theta <= 0.0 && positive,
        format!(
            "theta = {:.3} at J = n = 2 (monotone: {}), control J = 0 theta = {:.3}",
            cert.theta, cert.monotone, control.theta
        ),
    ))
}

fn c11_clamped(o: &Options) -> Result<(bool, String)> {
    let mut worst_ratio: f64 = 1.0;
    for (b, c, beta) in [(1.0, 1.0, 1.0), (5.0, 0.5, 1.0), (0.5, 1.0, 2.0)] {
        let p = params(0.0, b, c, beta)?;
        let d: Vec<f64> = [512, 1024, 2048]
            .iter()
            .map(|&n| bridge_coupling_derivative(&p, n))
            .collect::<Result<_>>()?;
        let r1 = [2.0 * d[1] - d[0], 2.0 * d[2] - d[1]];
        let bridge = (4.0 * r1[1] - r1[0]) / 3.0;
        // S is linear in a, so 1 − S at a = 1 is −dS/da
        let formula = 1.0 - moeler_correction(&p.with_a(1.0)?, beta)?;
        let ratio = bridge / formula;
        if (ratio - 1.0).abs() > (worst_ratio - 1.0).abs() {
            worst_ratio = ratio;
        }
    }
    let mut worst_asym: f64 = 0.0;
    let (a, c): (f64, f64) = (0.1, 0.5);
    for b in [0.5f64, 2.0, 5.0] {
        let g = (2.0 * b / c).sqrt();
        let beta = 20.0 / g;
        let asym = 1.0 - 3.0 * a / (32.0 * c * c * g.powi(3)) * (2.0 * g * beta - 3.0);
        worst_asym = worst_asym.max((moeler_correction(&params(a, b, c, 1.0)?, beta)? - asym).abs());
    }
    let part1 = (worst_ratio - 1.0).abs() < 0.01 * o.tolerance_scale;
    let part2 = worst_asym < 1e-6 * o.tolerance_scale;
    Ok((
        part1 && part2,
        format!(
            "bridge/formula ratio {worst_ratio:.4} ({}), asymptote error {worst_asym:.1e} at gamma*beta = 20 ({})",
            if part1 { "pass" } else { "fail" },
            if part2 { "pass" } else { "fail" }
        ),
    ))
}

fn c12_figures(_: &Options) -> Result<(bool, String)> {
    let mut identical = true;
    let mut rows_ok = true;
    for which in [1, 2] {
        let (d, (lo, hi)) = figure_defaults(which);
        let spec = FigureSpec {
            which,
            params: params(d[0], d[1], d[2], d[3])?,
            order: 3,
            x_min: lo,
            x_max: hi,
        };
        let first = figure_csv(&spec)?;
        identical &= first == figure_csv(&spec)?;
        rows_ok &= first.starts_with("x,value\n") && first.lines().count() == FIGURE_POINTS + 1;
    }
    let caption = figure_defaults(1).0 == [0.1, 0.0, 0.5, 1.0]
        && figure_defaults(2).0[..3] == [0.1, 5.0, 0.5];

    // S against a at fixed (b, c, τ), a up to the caption value
    let mut monotone = true;
    for b in abscissae(0.0, 10.0).into_iter().step_by(19) {
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let s = s_continuum(&params(0.01 * k as f64, b, 0.5, 1.0)?, 1.0, 3)?;
            monotone &= s < prev;
            prev = s;
        }
    }

    let (d, (lo, hi)) = figure_defaults(2);
    let zero = FigureSpec {
        which: 2,
        params: params(0.0, d[1], d[2], d[3])?,
        order: 3,
        x_min: lo,
        x_max: hi,
    };
    let vanishes = figure_rows(&zero)?.iter().all(|&(_, y)| y == 0.0)
        && ggy_potential_term(&params(0.0, 5.0, 0.5, 1.0)?, 1.0, 3)? == 0.0;
    Ok((
        identical && rows_ok && caption && monotone && vanishes,
        format!(
            "byte-identical reruns: {identical}, 200 rows: {rows_ok}, caption defaults: {caption}, S decreasing in a: {monotone}, figure 2 zero at a = 0: {vanishes}"
        ),
    ))
}
