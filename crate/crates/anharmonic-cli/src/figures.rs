//! Curve data for the two figures: `S(a,b,c,τ)` against `b`, and
//! `−2(ln S)'' − 4((ln S)')²` against `τ`.

use anharmonic::continuum::{ggy_potential_term, s_continuum};
use anharmonic::ModelParams;

use crate::format::num;

pub const FIGURE_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub which: u8,
    /// `beta` is τ for figure 1 and unused for figure 2.
    pub params: ModelParams,
    pub order: usize,
    pub x_min: f64,
    pub x_max: f64,
}

/// `[a, b, c, β]` defaults and the swept range of each figure.
pub fn figure_defaults(which: u8) -> ([f64; 4], (f64, f64)) {
    match which {
        1 => ([0.1, 0.0, 0.5, 1.0], (0.0, 10.0)),
        _ => ([0.1, 5.0, 0.5, 2.0], (0.0, 2.0)),
    }
}

pub fn abscissae(x_min: f64, x_max: f64) -> Vec<f64> {
    let step = (x_max - x_min) / (FIGURE_POINTS - 1) as f64;
    (0..FIGURE_POINTS)
        .map(|i| if i + 1 == FIGURE_POINTS { x_max } else { x_min + i as f64 * step })
        .collect()
}

pub fn figure_rows(spec: &FigureSpec) -> anharmonic::Result<Vec<(f64, f64)>> {
    abscissae(spec.x_min, spec.x_max)
        .into_iter()
        .map(|x| {
            let y = if spec.which == 1 {
                s_continuum(&spec.params.with_b(x)?, spec.params.beta, spec.order)?
            } else {
                ggy_potential_term(&spec.params, x, spec.order)?
            };
            Ok((x, y))
        })
        .collect()
}

/// Header `x,value`, `\n` line ends.
pub fn figure_csv(spec: &FigureSpec) -> anharmonic::Result<String> {
    let mut out = String::from("x,value\n");
    for (x, y) in figure_rows(spec)? {
        out.push_str(&num(x));
        out.push(',');
        out.push_str(&num(y));
        out.push('\n');
    }
    Ok(out)
}
