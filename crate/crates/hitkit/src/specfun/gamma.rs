//! Gamma function by the Lanczos approximation (g = 7, 9 coefficients).
//!
//! Self-contained on purpose: every special function in this crate funnels
//! through these routines, so reproducibility reduces to one coefficient set.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Γ(x) for real x. Returns NaN at the poles (0, -1, -2, ...).
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// ln |Γ(x)| for real x (NaN at poles).
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() || (x <= 0.0 && x == x.floor()) {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI.ln() - (PI * x).sin().abs().ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// |Γ(x + iy)|² for x > 0, via the same Lanczos sum in complex arithmetic.
///
/// Only the squared modulus is exposed: the kernels need products of the
/// form Γ(w + d) Γ(w - d) where d² may be negative, and for imaginary d that
/// product is exactly |Γ(w + i|d|)|².
pub fn gamma_modulus_sq(x: f64, y: f64) -> f64 {
    assert!(x > 0.0, "gamma_modulus_sq requires a positive real part");
    if y == 0.0 {
        let g = gamma(x);
        return g * g;
    }
    // Lanczos with z = (x - 1) + iy.
    let zr = x - 1.0;
    let zi = y;
    let mut ar = LANCZOS[0];
    let mut ai = 0.0f64;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        // c / (z + i)
        let dr = zr + i as f64;
        let den = dr * dr + zi * zi;
        ar += c * dr / den;
        ai += -c * zi / den;
    }
    let tr = zr + LANCZOS_G + 0.5;
    // ln Γ(z) = 0.5 ln 2π + (z + 0.5) ln t - t + ln acc, t = z + g + 0.5
    let t_mod_sq = tr * tr + zi * zi;
    let t_arg = zi.atan2(tr);
    // Re[(z + 0.5) ln t] = (zr + 0.5) * 0.5 ln|t|² - zi * arg t
    let re_ln = 0.5 * (2.0 * PI).ln() + (zr + 0.5) * 0.5 * t_mod_sq.ln() - zi * t_arg - tr
        + 0.5 * (ar * ar + ai * ai).ln();
    (2.0 * re_ln).exp()
}

/// Γ(w + d) Γ(w - d) where the caller supplies d² (which may be negative,
/// meaning d is purely imaginary). Requires w > |Re d| so both factors stay
/// right of the pole line.
pub fn gamma_pair_product(w: f64, d_sq: f64) -> f64 {
    if d_sq >= 0.0 {
        let d = d_sq.sqrt();
        gamma(w + d) * gamma(w - d)
    } else {
        gamma_modulus_sq(w, (-d_sq).sqrt())
    }
}
