//! Special functions backing every closed-form kernel in the crate.
//!
//! Everything here is a pure function of its arguments and safe to call from
//! any number of threads. Orders, parameters and degrees are plain `f64`
//! (integer degrees are `u32`); validity windows are enforced per function.
//!
//! Series follow one truncation policy: stop once |term|/|sum| < 1e-17 three
//! times in a row, give up with a `NonConvergence` error at 500 terms.

mod bessel;
mod ddreal;
mod gamma;
mod gegenbauer;
mod hyper;
mod legendre;
mod whittaker;

pub use bessel::{
    bessel_i, bessel_i_scaled, bessel_k, bessel_k_integer_limit, bessel_k_macdonald,
    bessel_k_reflection, bessel_k_scaled,
};
pub use gamma::{gamma, gamma_pair_product, ln_gamma};
pub use gegenbauer::gegenbauer_c;
pub use hyper::{hyp1f1, hyp2f1, hyp2f1_conjugate_pair, hyp_u};
pub use legendre::{legendre_p, legendre_q, legendre_wronskian_identity};
pub use whittaker::{whittaker_m, whittaker_w};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("parameter pole: {0}")]
    Pole(&'static str),
    #[error("overflow: {0}")]
    Overflow(&'static str),
    #[error("series did not converge: {0}")]
    NonConvergence(&'static str),
}
