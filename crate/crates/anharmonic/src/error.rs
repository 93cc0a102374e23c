use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NaN input to {0}")]
    NanInput(&'static str),

    #[error("{name} = {value} is outside the domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("overflow in {0}")]
    Overflow(&'static str),

    #[error("catastrophic cancellation in {0}")]
    PrecisionLoss(&'static str),

    #[error("quadratic form is not positive definite (leading minor {index})")]
    NotPositiveDefinite { index: usize },

    #[error("{which} = {value} must be positive; the grid is too coarse for this b")]
    GridPositivity { which: &'static str, value: f64 },

    #[error("continued fraction breaks down at depth {index}")]
    OmegaBlowUp { index: usize },

    #[error("q_{n} vanishes")]
    ZeroDenominator { n: usize },

    #[error("trigonometric branch pole reached (gamma*tau = {value})")]
    BranchPole { value: f64 },

    #[error("S = {value} is not positive at tau = {tau}")]
    NonPositiveS { tau: f64, value: f64 },

    #[error("{what} exceeds the cost limit {limit}")]
    CostLimit { what: &'static str, limit: usize },

    #[error("no convergence: {0}")]
    NotConverged(&'static str),

    #[error("tail term ratio {ratio} is not below 1/2; increase K0")]
    RatioTooLarge { ratio: f64 },

    #[error("remainder totals are not monotone in N")]
    NonMonotone,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &'static str, x: f64) -> Result<()> {
    if x.is_nan() {
        Err(Error::NanInput(name))
    } else {
        Ok(())
    }
}
