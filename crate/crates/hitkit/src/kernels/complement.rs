//! Poisson kernels of the complement of a half-line (and of half-spaces of
//! codimension two), valid for 1 < α < 2: the radial collapse of one Bessel
//! and one Brownian coordinate turns these into half-space kernels with
//! (α, n) replaced by (α - 1, n - 1), keeping λ = m^(1/α) of the original
//! process.

use super::halfline::{halfline2d_boundary_kernel, halfline2d_laplace_kernel};
use super::{euclid, k_ratio, KernelError, StabilityParams};
use crate::quadrature::QuadSpec;
use crate::specfun;
use std::f64::consts::PI;

fn check_alpha(alpha: f64) -> Result<(), KernelError> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(KernelError::Domain(
            "half-line complement kernels need alpha in (1, 2)",
        ));
    }
    Ok(())
}

fn reduced_params(alpha: f64, mass: f64) -> Result<StabilityParams, KernelError> {
    // index drops to α - 1 but the exponential rate stays m^(1/α)
    let lambda = if mass > 0.0 { mass.powf(1.0 / alpha) } else { 0.0 };
    StabilityParams::new(alpha - 1.0, mass, lambda)
}

/// General-start kernel in the plane: start ỹ = (y₁, y₂) with y₁ ≠ 0, exit
/// height r > 0 on the removed half-line. This is the half-line kernel at
/// index α - 1 with z = (|y₁|, y₂) and rate m^(1/α).
pub fn halfline_complement_kernel(
    alpha: f64,
    mass: f64,
    y_tilde: (f64, f64),
    r: f64,
    q: &QuadSpec,
) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    let (y1, y2) = y_tilde;
    if y1 == 0.0 {
        return Err(KernelError::Domain(
            "general-start form needs y₁ ≠ 0 (use the boundary form)",
        ));
    }
    let p = reduced_params(alpha, mass)?;
    halfline2d_laplace_kernel(&p, (y1.abs(), y2), r, q)
}

/// Boundary-start kernel (y₁ = 0, y₂ < 0):
/// sin(π(α-1)/2)/π (-y₂/r)^((α-1)/2) e^(-m^(1/α)(r-y₂)) / (r-y₂).
pub fn halfline_complement_boundary(
    alpha: f64,
    mass: f64,
    y2: f64,
    r: f64,
) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    if !(y2 < 0.0 && r > 0.0) {
        return Err(KernelError::Domain(
            "halfline_complement_boundary needs y₂ < 0 < r",
        ));
    }
    let p = reduced_params(alpha, mass)?;
    halfline2d_boundary_kernel(&p, y2, r)
}

/// The n-dimensional version (start on the spanned subspace): reduced
/// coordinates y = (y₂, ..., yₙ) with y₂ < 0 and σ̄ = (σ₂, ..., σₙ) with
/// σ₂ > 0, both in R^(n-1). For m > 0:
/// 2 sin(π(α-1)/2) λ^((n-1)/2) / (2^((n-1)/2) π^((n+1)/2)) (-y₂/σ₂)^((α-1)/2)
/// K_((n-1)/2)(λ d)/d^((n-1)/2), λ = m^(1/α); for m = 0 the stable form.
pub fn halfline_complement_nd(
    alpha: f64,
    mass: f64,
    y_reduced: &[f64],
    sigma_bar: &[f64],
) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    let k = y_reduced.len(); // = n - 1
    if k == 0 || sigma_bar.len() != k {
        return Err(KernelError::Domain("dimension mismatch"));
    }
    if !(y_reduced[0] < 0.0 && sigma_bar[0] > 0.0) {
        return Err(KernelError::Domain(
            "halfline_complement_nd needs y₂ < 0, σ₂ > 0",
        ));
    }
    let ap = alpha - 1.0;
    let kk = k as f64;
    let d = euclid(y_reduced, sigma_bar);
    if mass > 0.0 {
        let lambda = mass.powf(1.0 / alpha);
        Ok(2.0 * (PI * ap / 2.0).sin() * lambda.powf(kk / 2.0)
            / (2.0f64.powf(kk / 2.0) * PI.powf((kk + 2.0) / 2.0))
            * (-y_reduced[0] / sigma_bar[0]).powf(ap / 2.0)
            * k_ratio(kk / 2.0, lambda, d)?)
    } else {
        Ok((PI * ap / 2.0).sin() * specfun::gamma(kk / 2.0) / PI.powf((kk + 2.0) / 2.0)
            * (-y_reduced[0] / sigma_bar[0]).powf(ap / 2.0)
            * d.powf(-kk))
    }
}
