//! Hitting-time and hitting-place laws of Bessel-Brownian diffusions.
//!
//! The crate evaluates, to controlled tolerance, the closed-form kernels for
//! a diffusion made of one Bessel coordinate (index -α/2, reflecting at 0)
//! and independent Brownian coordinates: half-line and half-space exit laws,
//! interval/strip Poisson kernels, resolvent kernels, and the relativistic
//! α-stable Poisson kernels they encode. Exact and near-exact Monte Carlo
//! samplers of the same diffusions make every closed form empirically
//! checkable, and the `verify` module packages those checks as a pass/fail
//! suite.

// Comparisons are written in NaN-rejecting negated form (`!(x > 0.0)`) on
// purpose, and quadrature node tables carry their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

mod rng;
pub mod diffusion_sim;
pub mod kernels;
pub mod cli;
pub mod verify;
pub mod bessel_core;
pub mod quadrature;
pub mod specfun;
