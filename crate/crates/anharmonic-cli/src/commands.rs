use std::fs;
use std::io::Write;

use anharmonic::continuum::{continuum_c2, extrapolate_c_term, ContinuumSeries, Provenance};
use anharmonic::ggy::{harmonic_y, moeler_correction, solve_ggy, z_beta, Method, DEFAULT_STEPS};
use anharmonic::oracles::{
    bridge_coupling_derivative, coupling_derivative, i1_series, integrate_i1, zn_bruteforce, zn_gaussian,
    zn_montecarlo,
};
use anharmonic::recurrence::{z_cut, z_cut_in, SeriesValue};
use anharmonic::remainders::{log_k0_rule, worst_budget};
use anharmonic::scalar::DoubleDouble;
use anharmonic::slicing::{build_grid, zn_multisum};
use anharmonic::ModelParams;

use crate::acceptance::{self, Options};
use crate::args::{FigureArgs, OracleArgs, OracleKind, Precision, ValidateArgs, ZArgs};
use crate::error::{CliError, CliResult};
use crate::figures::{figure_csv, figure_defaults, FigureSpec};
use crate::format::{num, Report};

fn check_order(order: usize) -> CliResult<()> {
    if (1..=3).contains(&order) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--order must be 1, 2 or 3 (got {order})")))
    }
}

/// `(−1)^μ (a/c²)^μ/μ!`.
fn term_weight(p: &ModelParams, mu: usize) -> f64 {
    let x = p.a / (p.c * p.c);
    let f = [1.0, 1.0, 2.0, 6.0][mu];
    let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
    sign * x.powi(mu as i32) / f
}

fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::ClosedForm => "closed-form".into(),
        Provenance::Extrapolated { deltas, richardson_order } => {
            let d: Vec<String> = deltas.iter().map(|d| num(*d)).collect();
            format!("richardson(order={richardson_order}; delta={})", d.join("/"))
        }
    }
}

pub fn z_report(args: &ZArgs) -> CliResult<Report> {
    let p = args.params.resolve([0.1, 1.0, 1.0, 1.0])?;
    check_order(args.order)?;
    if args.n_slices == 0 {
        return Err(CliError::Usage("--n-slices must be positive".into()));
    }
    let h = args.h.unwrap_or(p.beta / DEFAULT_STEPS as f64);
    if !(h > 0.0 && h <= p.beta) {
        return Err(CliError::Usage(format!("--h must lie in (0, beta] (got {h})")));
    }

    let mut r = Report::default();
    for (k, v) in [("a", p.a), ("b", p.b), ("c", p.c), ("beta", p.beta)] {
        r.num(format!("params.{k}"), v);
    }
    r.push("order", args.order.to_string());

    let closed = z_beta(&p, args.order, Method::ClosedForm)?;
    let series = ContinuumSeries::build(p, p.beta, args.order)?;
    let traj = solve_ggy(&p, &series, p.beta, h)?;
    if traj.nonpositive {
        let low = traj.f_values.iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(anharmonic::Error::Domain {
            name: "F",
            value: low,
            reason: "F must stay positive on [0, beta]",
        }
        .into());
    }
    r.num("z.closed_form", closed);
    r.num("z.direct_ode", traj.z_beta);
    r.num("z.direct_ode.step", h);
    r.num("z.direct_ode.error_estimate", traj.error_estimate);
    r.num("z.method_difference", (closed - traj.z_beta).abs());

    let mut terms = vec![1.0];
    r.num("s.term.0.value", 1.0);
    r.push("s.term.0.provenance", "exact");
    for mu in 1..=args.order {
        let w = term_weight(&p, mu);
        let (c, err, prov) = if mu == 1 {
            (continuum_c2(&p, p.beta)?, 0.0, "closed-form".to_string())
        } else {
            let t = extrapolate_c_term(&p, p.beta, mu)?;
            (t.value, t.error_estimate, provenance_label(&t.provenance))
        };
        terms.push(w * c);
        r.num(format!("s.term.{mu}.c"), c);
        r.num(format!("s.term.{mu}.value"), w * c);
        r.num(format!("s.term.{mu}.error_estimate"), (w * err).abs());
        r.push(format!("s.term.{mu}.provenance"), prov);
    }
    let s: f64 = terms.iter().sum();
    r.num("s.value", s);
    let y = harmonic_y(&p, p.beta);
    let last = terms[args.order];
    // past the third term the next one is extrapolated geometrically
    let omitted = if args.order < 3 {
        (term_weight(&p, args.order + 1) * extrapolate_c_term(&p, p.beta, args.order + 1)?.value).abs()
    } else if terms[2] != 0.0 {
        last * last / terms[2].abs()
    } else {
        0.0
    };
    r.num("z.first_omitted_proxy", omitted.abs() / y.sqrt());

    let grid = build_grid(p, args.n_slices)?;
    let k0 = args.k0.unwrap_or_else(|| log_k0_rule(3.0)(args.n_slices));
    r.push("discrete.n_slices", args.n_slices.to_string());
    r.push("discrete.j_order", args.j_order.to_string());
    r.push(
        "discrete.precision",
        match args.precision {
            Precision::Standard => "standard",
            Precision::Extended => "extended",
        },
    );
    let cut: anharmonic::Result<SeriesValue> = match args.precision {
        Precision::Standard => z_cut(&grid, args.j_order),
        Precision::Extended => z_cut_in::<DoubleDouble>(&grid, args.j_order),
    };
    match cut {
        Ok(v) => {
            r.num("discrete.z_cut", v.value);
            r.num("discrete.first_omitted", v.first_omitted);
        }
        Err(e) => r.push("discrete.z_cut", format!("unavailable ({e})")),
    }

    r.push("remainder.k0", k0.to_string());
    if p.a == 0.0 {
        r.num("remainder.total", 0.0);
    } else {
        match worst_budget(&grid, k0, args.j_order, args.j_order) {
            Ok(b) => {
                r.num("remainder.poincare_piece", b.poincare_piece);
                r.num("remainder.tail_piece", b.tail_piece);
                r.num("remainder.difference_piece", b.difference_piece);
                r.num("remainder.total", b.total);
            }
            Err(e) => r.push("remainder.total", format!("unavailable ({e})")),
        }
    }
    Ok(r)
}

pub fn cmd_z(args: &ZArgs, out: &mut dyn Write) -> CliResult<()> {
    let r = z_report(args)?;
    out.write_all(r.render(args.kv).as_bytes()).map_err(CliError::stdout)
}

pub fn figure_spec(args: &FigureArgs) -> CliResult<FigureSpec> {
    check_order(args.order)?;
    let (defaults, (lo, hi)) = figure_defaults(args.which);
    let params = args.params.resolve(defaults)?;
    let x_min = args.x_min.unwrap_or(lo);
    let x_max = args.x_max.unwrap_or(hi);
    if !(x_min < x_max) {
        return Err(CliError::Usage(format!("--x-min must be below --x-max ({x_min} >= {x_max})")));
    }
    if args.which == 2 && x_min < 0.0 {
        return Err(CliError::Usage("figure 2 sweeps tau >= 0".into()));
    }
    Ok(FigureSpec {
        which: args.which,
        params,
        order: args.order,
        x_min,
        x_max,
    })
}

pub fn cmd_figure(args: &FigureArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = figure_spec(args)?;
    let csv = figure_csv(&spec)?;
    match &args.out {
        Some(path) => {
            fs::write(path, csv).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            writeln!(out, "wrote {}", path.display()).map_err(CliError::stdout)
        }
        None => out.write_all(csv.as_bytes()).map_err(CliError::stdout),
    }
}

pub fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> CliResult<()> {
    let opts = Options {
        suite: args.suite,
        seed: args.seed,
        tolerance_scale: if args.corrupt_tolerance { 0.0 } else { 1.0 },
    };
    let mut failed = 0;
    let mut total = 0;
    for outcome in acceptance::run_each(&opts) {
        writeln!(out, "{}", outcome.line()).map_err(CliError::stdout)?;
        out.flush().map_err(CliError::stdout)?;
        total += 1;
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Validation { failed, total })
    }
}

pub fn oracle_report(args: &OracleArgs) -> CliResult<Report> {
    let mut r = Report::default();
    let harmonic = |b: f64| args.params.resolve([0.0, b, 1.0, 1.0]);
    let coupled = || args.params.resolve([0.1, 1.0, 1.0, 1.0]);
    let n = args.n_slices;
    let sliced = !matches!(args.kind, OracleKind::I1 | OracleKind::I1Series | OracleKind::C2 | OracleKind::Clamped);
    if sliced {
        r.push("n_slices", n.to_string());
    }
    match args.kind {
        OracleKind::Gaussian => r.num("value", zn_gaussian(&harmonic(1.0)?, n)?),
        OracleKind::CouplingDerivative => r.num("value", coupling_derivative(&harmonic(1.0)?, n)?),
        OracleKind::Bridge => r.num("value", bridge_coupling_derivative(&harmonic(1.0)?, n)?),
        OracleKind::Multisum => {
            r.push("k0", args.k0.to_string());
            r.num("value", zn_multisum(&build_grid(coupled()?, n)?, args.k0)?)
        }
        OracleKind::Bruteforce => {
            let o = zn_bruteforce(&coupled()?, n)?;
            r.num("value", o.value);
            r.num("error_estimate", o.error_estimate);
            r.push("cost", o.cost.to_string());
        }
        OracleKind::Montecarlo => {
            let o = zn_montecarlo(&coupled()?, n, args.samples, args.seed)?;
            r.num("value", o.value);
            r.num("error_estimate", o.error_estimate);
            r.push("seed", args.seed.to_string());
            r.push("cost", o.cost.to_string());
        }
        OracleKind::I1 | OracleKind::I1Series => {
            let (a, b, c) = (args.params.a.unwrap_or(1.0), args.params.b.unwrap_or(1.0), args.params.c.unwrap_or(1.0));
            if args.kind == OracleKind::I1 {
                let o = integrate_i1(a, b, c)?;
                r.num("value", o.value);
                r.num("error_estimate", o.error_estimate);
            } else {
                r.push("terms", args.k0.to_string());
                r.num("value", i1_series(a, b, c, args.k0)?);
            }
        }
        OracleKind::C2 => {
            let p = coupled()?;
            r.num("value", continuum_c2(&p, p.beta)?);
        }
        OracleKind::Clamped => {
            let p = coupled()?;
            r.num("value", moeler_correction(&p, p.beta)?);
        }
    }
    Ok(r)
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> CliResult<()> {
    let r = oracle_report(args)?;
    out.write_all(r.render(false).as_bytes()).map_err(CliError::stdout)
}
