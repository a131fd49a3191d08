//! Exit kernels of the plane with the positive vertical half-line removed,
//! for the Bessel-Brownian pair (R, B).

use super::{KernelError, StabilityParams};
use crate::quadrature::{integrate_semi_infinite, QuadSpec};
use crate::specfun;
use std::f64::consts::PI;

/// Boundary-start kernel: start (0, u) with u < 0, exit at height r > 0,
/// weighted by exp(-λ² τ / 2):
/// sin(πα/2)/π (-u/r)^(α/2) e^(-λ(r-u)) / (r-u).
pub fn halfline2d_boundary_kernel(
    p: &StabilityParams,
    u: f64,
    r: f64,
) -> Result<f64, KernelError> {
    if !(u < 0.0 && r > 0.0) {
        return Err(KernelError::Domain(
            "halfline2d_boundary_kernel needs u < 0, r > 0",
        ));
    }
    let a = p.alpha;
    Ok((PI * a / 2.0).sin() / PI * (-u / r).powf(a / 2.0) * (-p.lambda * (r - u)).exp()
        / (r - u))
}

/// General-start kernel: start z = (z1, z2) with z1 > 0 (Bessel coordinate),
/// exit at r > 0:
///
/// (|z|+z2)^(α/4) (|z|-z2)^(α/2) / (2^(3α/4) Γ(α/2) r^(α/4)) ×
///   ∫_λ^∞ e^(-(|z|+r)s) (s²-λ²)^(α/4) I_{-α/2}(√(2r)√(|z|+z2)√(s²-λ²)) ds.
///
/// For λ > 0 the substitution s = λ cosh v removes the endpoint singularity;
/// for λ = 0 the substitution s = v² does the same.
pub fn halfline2d_laplace_kernel(
    p: &StabilityParams,
    z: (f64, f64),
    r: f64,
    q: &QuadSpec,
) -> Result<f64, KernelError> {
    let (z1, z2) = z;
    if !(z1 > 0.0 && r > 0.0) {
        return Err(KernelError::Domain(
            "halfline2d_laplace_kernel needs z1 > 0, r > 0",
        ));
    }
    let a = p.alpha;
    let lambda = p.lambda;
    let norm = z1.hypot(z2);
    let c = (2.0 * r).sqrt() * (norm + z2).sqrt();
    let decay = norm + r; // > c, so the integrand decays

    let ln_pref = (a / 4.0) * (norm + z2).ln() + (a / 2.0) * (norm - z2).ln()
        - (3.0 * a / 4.0) * 2.0f64.ln()
        - specfun::ln_gamma(a / 2.0)
        - (a / 4.0) * r.ln();
    let pref = ln_pref.exp();

    let quad = if lambda > 0.0 {
        integrate_semi_infinite(
            |v| {
                let sh = v.sinh();
                let ch = v.cosh();
                let w = c * lambda * sh;
                let scaled = match specfun::bessel_i_scaled(-a / 2.0, w) {
                    Ok(s) => s,
                    Err(_) => return f64::NAN,
                };
                let expo = lambda * (c * sh - decay * ch);
                if expo < -745.0 {
                    return 0.0;
                }
                lambda.powf(1.0 + a / 2.0) * sh.powf(1.0 + a / 2.0) * scaled * expo.exp()
            },
            0.0,
            q,
        )?
    } else {
        integrate_semi_infinite(
            |v| {
                let s = v * v;
                let w = c * s;
                let scaled = match specfun::bessel_i_scaled(-a / 2.0, w) {
                    Ok(sc) => sc,
                    Err(_) => return f64::NAN,
                };
                let expo = (c - decay) * s;
                if expo < -745.0 {
                    return 0.0;
                }
                2.0 * v * s.powf(a / 2.0) * scaled * expo.exp()
            },
            0.0,
            q,
        )?
    };
    Ok(pref * quad.value)
}
