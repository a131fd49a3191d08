//! Half-space exit laws in R^(n+1) and the Poisson kernels they induce.
//!
//! Convention: `y_tilde` and `sigma_tilde` are points of R^n with the
//! distinguished (sign-constrained) coordinate first: y_tilde[0] < 0 on the
//! start side, sigma_tilde[0] > 0 on the exit side.

use super::{euclid, k_ratio, KernelError, StabilityParams};
use crate::quadrature::{integrate_semi_infinite, QuadSpec};
use crate::specfun;
use std::f64::consts::PI;

/// Joint density of (exit time, exit place) from a boundary start (0, ỹ):
/// sin(πα/2)/(2^(n/2) π^(1+n/2)) (-y₂/σ₂)^(α/2) t^(-1-n/2) e^(-|σ̃-ỹ|²/2t).
pub fn halfspace_joint_density(
    alpha: f64,
    y_tilde: &[f64],
    t: f64,
    sigma_tilde: &[f64],
) -> Result<f64, KernelError> {
    let n = y_tilde.len();
    if n == 0 || sigma_tilde.len() != n {
        return Err(KernelError::Domain("dimension mismatch"));
    }
    if !(y_tilde[0] < 0.0 && sigma_tilde[0] > 0.0 && t > 0.0) {
        return Err(KernelError::Domain(
            "halfspace_joint_density needs y₂ < 0, σ₂ > 0, t > 0",
        ));
    }
    let d2 = y_tilde
        .iter()
        .zip(sigma_tilde)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>();
    let nn = n as f64;
    Ok((PI * alpha / 2.0).sin() / (2.0f64.powf(nn / 2.0) * PI.powf(1.0 + nn / 2.0))
        * (-y_tilde[0] / sigma_tilde[0]).powf(alpha / 2.0)
        * t.powf(-1.0 - nn / 2.0)
        * (-d2 / (2.0 * t)).exp())
}

/// Laplace-weighted exit kernel from a boundary start,
/// H_λ(ỹ, σ̃) = 2 sin(πα/2) λ^(n/2) / (2^(n/2) π^((n+2)/2)) (-y₂/σ₂)^(α/2)
///             K_(n/2)(λ|ỹ-σ̃|) / |ỹ-σ̃|^(n/2),  λ > 0.
pub fn halfspace_h_lambda(
    p: &StabilityParams,
    y_tilde: &[f64],
    sigma_tilde: &[f64],
) -> Result<f64, KernelError> {
    let n = y_tilde.len();
    if n == 0 || sigma_tilde.len() != n {
        return Err(KernelError::Domain("dimension mismatch"));
    }
    if !(y_tilde[0] < 0.0 && sigma_tilde[0] > 0.0) {
        return Err(KernelError::Domain("halfspace_h_lambda needs y₂ < 0, σ₂ > 0"));
    }
    if !(p.lambda > 0.0) {
        return Err(KernelError::Domain(
            "halfspace_h_lambda needs λ > 0 (use halfspace_poisson_stable at λ = 0)",
        ));
    }
    let nn = n as f64;
    let a = p.alpha;
    let d = euclid(y_tilde, sigma_tilde);
    Ok(2.0 * (PI * a / 2.0).sin() * p.lambda.powf(nn / 2.0)
        / (2.0f64.powf(nn / 2.0) * PI.powf((nn + 2.0) / 2.0))
        * (-y_tilde[0] / sigma_tilde[0]).powf(a / 2.0)
        * k_ratio(nn / 2.0, p.lambda, d)?)
}

/// First-passage displacement kernel from an interior start y = (y1, ỹ),
/// P_λ(y, z̃) = 2 y1^α λ^((n+α)/2) / ((2π)^(n/2) 2^(α/2) Γ(α/2))
///             K_((n+α)/2)(λ|y-z̃|) / |y-z̃|^((n+α)/2).
pub fn halfspace_p_lambda(
    p: &StabilityParams,
    y: &[f64],
    z_tilde: &[f64],
) -> Result<f64, KernelError> {
    let n = z_tilde.len();
    if y.len() != n + 1 {
        return Err(KernelError::Domain("y must have n + 1 coordinates"));
    }
    if !(y[0] > 0.0) {
        return Err(KernelError::Domain("halfspace_p_lambda needs y1 > 0"));
    }
    if !(p.lambda > 0.0) {
        return Err(KernelError::Domain("halfspace_p_lambda needs λ > 0"));
    }
    let nn = n as f64;
    let a = p.alpha;
    let mut d2 = y[0] * y[0];
    for (c, z) in y[1..].iter().zip(z_tilde) {
        d2 += (c - z) * (c - z);
    }
    let d = d2.sqrt();
    let ln_pref = 2.0f64.ln() + a * y[0].ln() + (nn + a) / 2.0 * p.lambda.ln()
        - (nn / 2.0) * (2.0 * PI).ln()
        - (a / 2.0) * 2.0f64.ln()
        - specfun::ln_gamma(a / 2.0);
    Ok(ln_pref.exp() * k_ratio((nn + a) / 2.0, p.lambda, d)?)
}

/// Interior-start Laplace kernel by the strong-Markov composition:
/// ∫_((-∞,0]×R^(n-1)) P_λ(y, z̃) H_λ(z̃, σ̃) dz̃ + P_λ(y, σ̃).
///
/// n ∈ {1, 2, 3} use nested deterministic quadrature; higher n falls back
/// to Halton quasi-Monte Carlo with 2^16 points.
pub fn halfspace_laplace_kernel(
    p: &StabilityParams,
    y: &[f64],
    sigma_tilde: &[f64],
    q: &QuadSpec,
) -> Result<f64, KernelError> {
    let n = sigma_tilde.len();
    if y.len() != n + 1 {
        return Err(KernelError::Domain("y must have n + 1 coordinates"));
    }
    if !(y[0] > 0.0 && sigma_tilde[0] > 0.0) {
        return Err(KernelError::Domain(
            "halfspace_laplace_kernel needs y1 > 0 and σ₂ > 0",
        ));
    }
    let direct = halfspace_p_lambda(p, y, sigma_tilde)?;
    let correction = match n {
        1 => {
            let f = |v: f64| -> f64 {
                if v <= 0.0 {
                    return 0.0;
                }
                let z = [-v];
                let a = halfspace_p_lambda(p, y, &z).unwrap_or(f64::NAN);
                let b = halfspace_h_lambda(p, &z, sigma_tilde).unwrap_or(f64::NAN);
                a * b
            };
            integrate_semi_infinite(f, 0.0, q)?.value
        }
        2 | 3 => nested_halfplane_integral(p, y, sigma_tilde, q)?,
        _ => halton_halfplane_integral(p, y, sigma_tilde),
    };
    Ok(direct + correction)
}

// Tensorized quadrature of P_λ H_λ over (-∞, 0] × R^(n-1) for n = 2, 3.
fn nested_halfplane_integral(
    p: &StabilityParams,
    y: &[f64],
    sigma_tilde: &[f64],
    q: &QuadSpec,
) -> Result<f64, KernelError> {
    let n = sigma_tilde.len();
    // free-coordinate integrals split at a center between the two sources
    let centers: Vec<f64> = (1..n)
        .map(|j| 0.5 * (y[1 + j] + sigma_tilde[j]))
        .collect();
    let inner_spec = QuadSpec {
        tol: q.tol * 0.5,
        ..*q
    };
    let value = |z_tilde: &[f64]| -> f64 {
        let a = halfspace_p_lambda(p, y, z_tilde).unwrap_or(f64::NAN);
        let b = halfspace_h_lambda(p, z_tilde, sigma_tilde).unwrap_or(f64::NAN);
        a * b
    };
    let outer = |v: f64| -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        match n {
            2 => {
                let g = |w: f64, side: f64| {
                    let z = [-v, centers[0] + side * w];
                    value(&z)
                };
                let plus = integrate_semi_infinite(|w| g(w, 1.0), 0.0, &inner_spec)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                let minus = integrate_semi_infinite(|w| g(w, -1.0), 0.0, &inner_spec)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                plus + minus
            }
            3 => {
                let mid = |w2: f64| -> f64 {
                    let g = |w3: f64, side: f64| {
                        let z = [-v, w2, centers[1] + side * w3];
                        value(&z)
                    };
                    let plus = integrate_semi_infinite(|w| g(w, 1.0), 0.0, &inner_spec)
                        .map(|r| r.value)
                        .unwrap_or(f64::NAN);
                    let minus = integrate_semi_infinite(|w| g(w, -1.0), 0.0, &inner_spec)
                        .map(|r| r.value)
                        .unwrap_or(f64::NAN);
                    plus + minus
                };
                let plus = integrate_semi_infinite(|w| mid(centers[0] + w), 0.0, &inner_spec)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                let minus = integrate_semi_infinite(|w| mid(centers[0] - w), 0.0, &inner_spec)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                plus + minus
            }
            _ => unreachable!(),
        }
    };
    Ok(integrate_semi_infinite(outer, 0.0, q)?.value)
}

// Low-discrepancy fallback for n ≥ 4: exponential map on the constrained
// coordinate, Cauchy (tangent) maps on the free ones.
fn halton_halfplane_integral(p: &StabilityParams, y: &[f64], sigma_tilde: &[f64]) -> f64 {
    let n = sigma_tilde.len();
    let rate = p.lambda.max(0.25);
    const BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    let points = 1u64 << 16;
    let mut acc = 0.0f64;
    for i in 0..points {
        let mut z = Vec::with_capacity(n);
        let mut weight = 1.0f64;
        let u0 = halton(i + 1, BASES[0]);
        // z₂ = ln(u)/ (2 rate) < 0, importance weight e^{2 rate z} / (2 rate)
        let z2 = u0.ln() / (2.0 * rate);
        weight /= 2.0 * rate * u0;
        z.push(z2);
        for j in 1..n {
            let u = halton(i + 1, BASES[j % BASES.len()]);
            let c = 0.5 * (y[1 + j] + sigma_tilde[j]);
            let t = PI * (u - 0.5);
            let spread = 1.0 + euclid(&y[1..], sigma_tilde);
            z.push(c + spread * t.tan());
            weight *= PI * spread / (t.cos() * t.cos());
        }
        let a = halfspace_p_lambda(p, y, &z).unwrap_or(0.0);
        let b = halfspace_h_lambda(p, &z, sigma_tilde).unwrap_or(0.0);
        acc += a * b * weight;
    }
    acc / points as f64
}

fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// m-Poisson kernel of the half-space {x₁ < 0} for the relativistic process:
/// 2 sin(πα/2) m^(n/2α) / (2^(n/2) π^((n+2)/2)) (-y₁/σ₁)^(α/2)
/// K_(n/2)(m^(1/α)|ỹ-σ̃|) / |ỹ-σ̃|^(n/2), m > 0.
pub fn halfspace_poisson_relativistic(
    p: &StabilityParams,
    y_tilde: &[f64],
    sigma_tilde: &[f64],
) -> Result<f64, KernelError> {
    if !(p.mass > 0.0) {
        return Err(KernelError::Domain(
            "halfspace_poisson_relativistic needs m > 0",
        ));
    }
    let linked = StabilityParams::relativistic(p.alpha, p.mass)?;
    halfspace_h_lambda(&linked, y_tilde, sigma_tilde)
}

/// Poisson kernel of the half-space for the isotropic stable process:
/// sin(πα/2) Γ(n/2) / π^((n+2)/2) (-y₁/σ₁)^(α/2) |ỹ-σ̃|^(-n).
pub fn halfspace_poisson_stable(
    alpha: f64,
    y_tilde: &[f64],
    sigma_tilde: &[f64],
) -> Result<f64, KernelError> {
    let n = y_tilde.len();
    if n == 0 || sigma_tilde.len() != n {
        return Err(KernelError::Domain("dimension mismatch"));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(KernelError::Domain("alpha must lie in (0, 2)"));
    }
    if !(y_tilde[0] < 0.0 && sigma_tilde[0] > 0.0) {
        return Err(KernelError::Domain(
            "halfspace_poisson_stable needs y₁ < 0, σ₁ > 0",
        ));
    }
    let nn = n as f64;
    let d = euclid(y_tilde, sigma_tilde);
    Ok((PI * alpha / 2.0).sin() * specfun::gamma(nn / 2.0) / PI.powf((nn + 2.0) / 2.0)
        * (-y_tilde[0] / sigma_tilde[0]).powf(alpha / 2.0)
        * d.powf(-nn))
}
