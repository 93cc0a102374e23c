//! Wiener-measure functional integral for the quartic anharmonic oscillator.
//!
//! The time-sliced integral `Z_N` is written as a multi-index series of
//! parabolic cylinder functions ([`slicing`]); its leading part is produced by
//! a matrix recurrence ([`recurrence`]) driven by a continued fraction
//! ([`contfrac`]); the continuum limit ([`continuum`]) feeds a generalized
//! Gelfand–Yaglom equation ([`ggy`]) whose solution gives `Z(β) = 1/√F(β)`.
//! [`oracles`] holds brute-force references and [`remainders`] the remainder
//! bookkeeping.

pub mod contfrac;
pub mod continuum;
pub mod error;
pub mod ggy;
pub mod oracles;
pub mod recurrence;
pub mod remainders;
pub mod scalar;
pub mod slicing;
pub mod specfun;

pub use error::{Error, Result};
pub use slicing::{ModelParams, SliceGrid};
