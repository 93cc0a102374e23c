//! Brute-force reference values. Nothing here calls the series machinery of
//! [`crate::slicing`] or [`crate::recurrence`], so each routine can serve as
//! an independent check on them.

mod gaussian;
mod montecarlo;
mod quad;

pub use gaussian::{
    bridge_coupling_derivative, coupling_derivative, covariance_diagonal, ln_zn_gaussian,
    zn_gaussian,
};
pub use montecarlo::zn_montecarlo;
pub use quad::{i1_series, integrate_i1, integrate_i1_refined, poincare_remainder, zn_bruteforce};

/// A reference value with its estimated absolute error and the number of
/// integrand (or sample) evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub error_estimate: f64,
    pub cost: u64,
}
