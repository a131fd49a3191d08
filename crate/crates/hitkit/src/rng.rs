//! Random-number plumbing shared by the samplers.
//!
//! Streams are counter-based in the sense that the generator state for path
//! `i` under seed `s` is a pure function of `(s, i)`: a SplitMix64 hash of
//! the pair seeds an independent PCG stream. Aggregation order therefore
//! never depends on thread scheduling.

use rand::Rng;
use rand_distr::StandardNormal;
use rand_pcg::Pcg64Mcg;

/// Deterministic per-path substream keyed by `(seed, path_index)`.
pub fn substream(seed: u64, path_index: u64) -> Pcg64Mcg {
    let mixed = splitmix64(seed ^ splitmix64(path_index.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    // Pcg64Mcg wants a 128-bit state; derive both halves from the hash chain.
    let hi = splitmix64(mixed);
    let lo = splitmix64(hi);
    Pcg64Mcg::new(((hi as u128) << 64) | lo as u128)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard normal draw.
#[inline]
pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Gamma(shape, scale) by Marsaglia-Tsang, with the U^(1/shape) boost for
/// shape < 1 (the transition laws here live at shape = ν + 1 ∈ (0, 1)).
pub fn gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64, scale: f64) -> f64 {
    debug_assert!(shape > 0.0 && scale > 0.0);
    if shape < 1.0 {
        let u: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
        return gamma(rng, shape + 1.0, scale) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (3.0 * d.sqrt());
    loop {
        let x = normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u: f64 = rng.gen();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v * scale;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v * scale;
        }
    }
}

/// Poisson(mean): sequential inversion below mean 10, Hörmann's PTRS
/// transformed rejection above.
pub fn poisson<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> u64 {
    debug_assert!(mean >= 0.0);
    if mean == 0.0 {
        return 0;
    }
    if mean < 10.0 {
        let limit = (-mean).exp();
        let mut product: f64 = rng.gen();
        let mut count = 0u64;
        while product > limit {
            product *= rng.gen::<f64>();
            count += 1;
        }
        count
    } else {
        poisson_ptrs(rng, mean)
    }
}

fn poisson_ptrs<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> u64 {
    let b = 0.931 + 2.53 * mean.sqrt();
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let v_r = 0.9277 - 3.6224 / (b - 2.0);
    let ln_mean = mean.ln();
    loop {
        let u: f64 = rng.gen::<f64>() - 0.5;
        let v: f64 = rng.gen();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
        if us >= 0.07 && v <= v_r {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let ln_accept = (v * inv_alpha / (a / (us * us) + b)).ln();
        if ln_accept <= k * ln_mean - mean - crate::specfun::ln_gamma(k + 1.0) {
            return k as u64;
        }
    }
}
