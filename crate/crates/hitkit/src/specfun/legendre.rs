//! Legendre functions of the first and second kind on the cut (1, ∞).
//!
//! Q is kept in a real-valued convention: the classical definition carries a
//! phase e^(μiπ) on (1, ∞) which every downstream kernel formula multiplies
//! by a compensating e^(-iαπ/2); with μ = α/2 the two phases cancel
//! identically, so both are dropped here once and for all. The Wronskian
//! helper below states the identity in the same stripped convention.

use super::gamma::{gamma, ln_gamma};
use super::hyper::hyp2f1;
use super::SpecFunError;
use std::f64::consts::PI;

/// Legendre function of the first kind P_ν^μ(x), x > 1.
pub fn legendre_p(nu: f64, mu: f64, x: f64) -> Result<f64, SpecFunError> {
    if !(x > 1.0) {
        return Err(SpecFunError::Domain("legendre_p requires x > 1"));
    }
    if (1.0 - mu) <= 0.0 && (1.0 - mu) == (1.0 - mu).round() {
        return Err(SpecFunError::Pole("legendre_p: 1 - mu is a nonpositive integer"));
    }
    let pref = ((x + 1.0) / (x - 1.0)).powf(mu / 2.0) / gamma(1.0 - mu);
    Ok(pref * hyp2f1(-nu, nu + 1.0, 1.0 - mu, (1.0 - x) / 2.0)?)
}

/// Legendre function of the second kind Q_ν^μ(x), x > 1, real convention
/// (the e^(μiπ) factor of the classical definition stripped).
pub fn legendre_q(nu: f64, mu: f64, x: f64) -> Result<f64, SpecFunError> {
    if !(x > 1.0) {
        return Err(SpecFunError::Domain("legendre_q requires x > 1"));
    }
    let top = nu + mu + 1.0;
    if top <= 0.0 && top == top.round() {
        return Err(SpecFunError::Pole("legendre_q: nu + mu + 1 is a nonpositive integer"));
    }
    // Γ(ν+μ+1)/Γ(ν+3/2) via logs: the Gegenbauer coefficients push ν past 40
    // where the direct ratio would overflow long before the result does.
    let ln_ratio = ln_gamma(top) - ln_gamma(nu + 1.5);
    let pref = 2.0f64.powf(-nu - 1.0) * PI.sqrt() * ln_ratio.exp() * x.powf(-top)
        * (x * x - 1.0).powf(mu / 2.0);
    Ok(pref * hyp2f1((nu + mu) / 2.0 + 1.0, (nu + mu + 1.0) / 2.0, nu + 1.5, 1.0 / (x * x))?)
}

/// The Wronskian P Q' - P' Q in the stripped-phase convention:
/// 2^(2μ) Γ((ν+μ)/2 + 1) Γ((ν+μ+1)/2) / (Γ(1 + (ν-μ)/2) Γ((1+ν-μ)/2) (1-x²)).
pub fn legendre_wronskian_identity(nu: f64, mu: f64, x: f64) -> f64 {
    4.0f64.powf(mu) * gamma((nu + mu) / 2.0 + 1.0) * gamma((nu + mu + 1.0) / 2.0)
        / (gamma(1.0 + (nu - mu) / 2.0) * gamma((1.0 + nu - mu) / 2.0))
        / (1.0 - x * x)
}
