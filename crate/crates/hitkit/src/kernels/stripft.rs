//! Monte Carlo check of the strip Fourier relation: the transverse Fourier
//! transform of the 3D strip exit law equals the 2D strip law at the shifted
//! rate √(|ȳ-z̄|² + λ²). No closed form exists for the weighted 2D law, so
//! both sides are estimated from the same simulator and reported with
//! standard errors.

use super::KernelError;
use crate::diffusion_sim::{parallel_paths, sample_strip_hit, SimConfig};
use crate::rng;

/// Both sides of the strip Fourier identity at one exit height, with
/// Monte Carlo standard errors.
#[derive(Debug, Clone, Copy)]
pub struct StripFtEstimate {
    /// Fourier side: Σ e^{-λ²τ/2} cos/sin((σ̄, z̄)) over a σ₂-bin.
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub lhs_se: f64,
    /// Rate-shifted side: Σ e^{-λ'²τ/2} over the σ₂-bin, λ' = √(|ȳ-z̄|²+λ²).
    pub rhs: f64,
    pub rhs_se: f64,
}

/// Estimate both sides of the Fourier relation for the 3D strip (n = 2).
///
/// `y` is the start (y₂ ∈ (-1, 1), ȳ one transverse coordinate), `sigma2`
/// the exit height at which the density is probed (|σ₂| > 1, bin half-width
/// `half_width`), `zbar_freq` the transverse frequency. Estimates whose
/// standard error exceeds 20% of the value are rejected.
pub fn strip_ft_check(
    alpha: f64,
    lambda: f64,
    y: (f64, f64),
    sigma2: f64,
    half_width: f64,
    zbar_freq: f64,
    cfg: &SimConfig,
) -> Result<StripFtEstimate, KernelError> {
    let (y2, ybar) = y;
    if !(y2.abs() < 1.0) || !(sigma2.abs() > 1.0) || !(half_width > 0.0) || !(lambda >= 0.0) {
        return Err(KernelError::Domain(
            "strip_ft_check needs |y₂| < 1 < |σ₂|, half_width > 0, λ >= 0",
        ));
    }
    let lambda_shift = ((ybar - zbar_freq) * (ybar - zbar_freq) + lambda * lambda).sqrt();

    // Per path: the 2D strip exit (place, clock), one transverse Gaussian.
    // Both estimators bin on the same exit places, which kills most of the
    // comparison variance.
    struct PathOut {
        lhs_re: f64,
        lhs_im: f64,
        rhs: f64,
    }
    let lo = sigma2 - half_width;
    let hi = sigma2 + half_width;
    let outs: Vec<Option<PathOut>> = parallel_paths(cfg, |rng, _| {
        let s = sample_strip_hit(alpha, (0.0, y2), cfg, rng).ok()?;
        let place = s.place[0];
        if place < lo || place > hi {
            return None;
        }
        let tau = s.time_functional.expect("strip clock present");
        let sigma_bar = ybar + tau.sqrt() * rng::normal(rng);
        let w_lhs = (-lambda * lambda * tau / 2.0).exp();
        let phase = sigma_bar * zbar_freq;
        let w_rhs = (-lambda_shift * lambda_shift * tau / 2.0).exp();
        Some(PathOut {
            lhs_re: w_lhs * phase.cos(),
            lhs_im: w_lhs * phase.sin(),
            rhs: w_rhs,
        })
    });

    let n = cfg.n_paths as f64;
    let scale = 1.0 / (n * 2.0 * half_width);
    let mut sum_re = 0.0;
    let mut sum_im = 0.0;
    let mut sum_rhs = 0.0;
    let mut sq_re = 0.0;
    let mut sq_rhs = 0.0;
    let mut hits = 0u64;
    for o in outs.iter().flatten() {
        sum_re += o.lhs_re;
        sum_im += o.lhs_im;
        sum_rhs += o.rhs;
        sq_re += o.lhs_re * o.lhs_re;
        sq_rhs += o.rhs * o.rhs;
        hits += 1;
    }
    if hits < 25 {
        return Err(KernelError::InsufficientSamples(format!(
            "only {hits} of {} paths landed in the σ₂ bin",
            cfg.n_paths
        )));
    }
    let est = StripFtEstimate {
        lhs_re: sum_re * scale,
        lhs_im: sum_im * scale,
        lhs_se: ((sq_re / n - (sum_re / n) * (sum_re / n)) / n).max(0.0).sqrt()
            / (2.0 * half_width),
        rhs: sum_rhs * scale,
        rhs_se: ((sq_rhs / n - (sum_rhs / n) * (sum_rhs / n)) / n).max(0.0).sqrt()
            / (2.0 * half_width),
    };
    if est.lhs_se > 0.2 * est.lhs_re.abs().max(1e-300)
        || est.rhs_se > 0.2 * est.rhs.abs().max(1e-300)
    {
        return Err(KernelError::InsufficientSamples(format!(
            "standard error exceeds 20%: lhs {} ± {}, rhs {} ± {}",
            est.lhs_re, est.lhs_se, est.rhs, est.rhs_se
        )));
    }
    Ok(est)
}
