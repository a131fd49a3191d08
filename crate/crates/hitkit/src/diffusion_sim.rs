//! Monte Carlo realization of the Bessel-Brownian diffusions and their
//! hitting laws.
//!
//! The half-line place sampler is exact: the coordinates are mapped to the
//! independent BESQ pair (X1, X2), where the hitting time of the removed set
//! is an explicit inverse-Gamma variable and the place is one exact BESQ
//! transition draw. Monitoring the Bessel coordinate on a grid would almost
//! surely miss its null-measure zero set, so no grid appears in that path at
//! all. Time functionals (the additive clocks A1, A2) and the strip exit are
//! the only discretized quantities, and every sample records which of its
//! components are discretization-free.
//!
//! Parallelism contract: one RNG substream per path keyed by (seed,
//! path_index); results are identical for any thread count.

use crate::bessel_core::{self, BesselError, BesselLaw, HitLawParams};
use crate::rng::{self, substream};
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("path exceeded the step horizon before exiting")]
    Horizon,
    #[error(transparent)]
    Bessel(#[from] BesselError),
}

/// Simulation controls shared by the samplers.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    pub n_paths: u64,
    /// Euler step for the strip SDE.
    pub dt: f64,
    /// Skeleton points for additive-functional quadrature.
    pub substeps: u32,
    /// Linear sub-step interpolation of the boundary crossing time.
    pub bridge_correction: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: 0,
            n_paths: 10_000,
            dt: 1e-4,
            substeps: 64,
            bridge_correction: true,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<(), SimError> {
        if !(self.dt > 0.0) || self.n_paths < 1 || self.substeps < 1 {
            return Err(SimError::Precondition(
                "SimConfig requires dt > 0, n_paths >= 1, substeps >= 1",
            ));
        }
        Ok(())
    }
}

/// One Monte Carlo hitting draw.
///
/// `place` holds the free coordinates of the exit point; `time_functional`
/// the exit time (or additive-clock value) when the sampler produces one.
/// The exactness flags record which components carry no discretization bias.
#[derive(Debug, Clone, PartialEq)]
pub struct HitSample {
    pub place: Vec<f64>,
    pub time_functional: Option<f64>,
    pub exact_place: bool,
    pub exact_time: bool,
}

/// The independent component pair (X1, X2) feeding the coordinate maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    pub x1: f64,
    pub x2: f64,
}

impl PairState {
    /// Half-space pair: both coordinates are squared Bessel, hence ≥ 0.
    pub fn halfspace(x1: f64, x2: f64) -> Result<Self, SimError> {
        if !(x1 >= 0.0 && x2 >= 0.0) {
            return Err(SimError::Precondition("half-space pair needs x1, x2 >= 0"));
        }
        Ok(PairState { x1, x2 })
    }

    /// Strip pair: |x1| ≤ 1 (trigonometric component), x2 ≥ 1 (hyperbolic).
    pub fn strip(x1: f64, x2: f64) -> Result<Self, SimError> {
        if !(x1.abs() <= 1.0 && x2 >= 1.0) {
            return Err(SimError::Precondition("strip pair needs |x1| <= 1, x2 >= 1"));
        }
        Ok(PairState { x1, x2 })
    }
}

/// (z1, z2) ↦ (x1, x2) for the half-line geometry: x1 = (|z|-z2)/2,
/// x2 = (|z|+z2)/2, where z1 is the Bessel coordinate and y1 = z1².
pub fn halfline_pair_from_start(z1: f64, z2: f64) -> Result<PairState, SimError> {
    if !(z1 >= 0.0) {
        return Err(SimError::Precondition("Bessel coordinate z1 must be >= 0"));
    }
    if z1 == 0.0 && z2 > 0.0 {
        return Err(SimError::Precondition(
            "start lies on the removed half-line {y1 = 0, y2 > 0}",
        ));
    }
    let norm = z1.hypot(z2);
    PairState::halfspace((norm - z2) / 2.0, (norm + z2) / 2.0)
}

/// (z1, z2) ↦ (x1, x2) for the strip geometry. The larger combination of
/// square roots is the hyperbolic coordinate x2 ≥ 1; the smaller one is the
/// trigonometric coordinate |x1| ≤ 1. The inverse identity
/// h(x1, x2) = (z1², z2) is asserted on construction.
pub fn strip_pair_from_start(z1: f64, z2: f64) -> Result<PairState, SimError> {
    if !(z1 >= 0.0) {
        return Err(SimError::Precondition("Bessel coordinate z1 must be >= 0"));
    }
    if z1 == 0.0 && z2.abs() > 1.0 {
        return Err(SimError::Precondition(
            "start lies on the removed half-lines {y1 = 0, |y2| > 1}",
        ));
    }
    let y1 = z1 * z1;
    let a = (y1 + (z2 + 1.0) * (z2 + 1.0)).sqrt();
    let b = (y1 + (z2 - 1.0) * (z2 - 1.0)).sqrt();
    let pair = PairState::strip((a - b) / 2.0, (a + b) / 2.0)?;
    let h1 = (1.0 - pair.x1 * pair.x1) * (pair.x2 * pair.x2 - 1.0);
    let h2 = pair.x1 * pair.x2;
    let scale = 1.0 + y1.abs() + z2.abs();
    debug_assert!(
        (h1 - y1).abs() <= 1e-9 * scale * scale && (h2 - z2).abs() <= 1e-9 * scale,
        "inverse map failed: h = ({h1}, {h2}) vs ({y1}, {z2})"
    );
    Ok(pair)
}

/// Exact draw of the exit place on the vertical half-line geometry: the exit
/// time of X1 is y1-exact inverse-Gamma, the place is one BESQ transition of
/// X2. No discretization anywhere.
pub fn sample_halfline_hit_place<R: Rng + ?Sized>(
    alpha: f64,
    start: (f64, f64),
    rng: &mut R,
) -> Result<HitSample, SimError> {
    let pair = halfline_pair_from_start(start.0, start.1)?;
    let law = BesselLaw::from_alpha(alpha)?;
    let tau = besq_hit_zero_time(alpha, pair.x1, rng);
    let place = bessel_core::besq_sample_transition(law, tau.max(f64::MIN_POSITIVE), pair.x2, rng);
    Ok(HitSample {
        place: vec![place],
        time_functional: None,
        exact_place: true,
        exact_time: false,
    })
}

// Hitting time of 0 for BESQ(-α/2) started at x1: x1/(2 G), G ~ Gamma(α/2).
fn besq_hit_zero_time<R: Rng + ?Sized>(alpha: f64, x1: f64, rng: &mut R) -> f64 {
    if x1 == 0.0 {
        return 0.0;
    }
    x1 / (2.0 * rng::gamma(rng, alpha / 2.0, 1.0))
}

/// Half-line hit with the additive clock A1(τ_H) = 4 ∫ (X1 + X2).
///
/// The X1 skeleton is a conditioned bridge to zero: each transition is the
/// Poisson-Gamma mixture exponentially tilted by the requirement that the
/// path sits at 0 at τ_H (the tilt keeps the mixture in closed form), and
/// the final point is pinned to 0 exactly. X2 runs by exact forward
/// transitions on the same grid; the place is its endpoint, so the place law
/// matches the exact sampler. A1 itself is a trapezoid sum on a grid
/// geometrically refined toward τ_H, hence `exact_time = false`.
pub fn sample_halfline_hit_with_time<R: Rng + ?Sized>(
    alpha: f64,
    start: (f64, f64),
    cfg: &SimConfig,
    rng: &mut R,
) -> Result<HitSample, SimError> {
    cfg.validate()?;
    let pair = halfline_pair_from_start(start.0, start.1)?;
    let law = BesselLaw::from_alpha(alpha)?;
    let tau = besq_hit_zero_time(alpha, pair.x1, rng).max(1e-300);
    let grid = refined_grid(tau, cfg.substeps);

    let mut x1 = pair.x1;
    let mut x2 = pair.x2;
    let mut a1 = 0.0f64;
    for j in 1..grid.len() {
        let dt = grid[j] - grid[j - 1];
        let prev_sum = x1 + x2;
        x1 = besq_bridge_to_zero_step(law, x1, grid[j - 1], grid[j], tau, rng);
        x2 = bessel_core::besq_sample_transition(law, dt.max(1e-300), x2, rng);
        a1 += 0.5 * (prev_sum + x1 + x2) * dt;
    }
    Ok(HitSample {
        place: vec![x2],
        time_functional: Some(4.0 * a1),
        exact_place: true,
        exact_time: false,
    })
}

// Grid 0 = t_0 < ... < t_K = tau with steps shrinking geometrically toward
// tau (last step ~100x smaller than the first).
fn refined_grid(tau: f64, substeps: u32) -> Vec<f64> {
    let k = substeps.max(1) as usize;
    if k == 1 {
        return vec![0.0, tau];
    }
    let q = 0.01f64.powf(1.0 / (k as f64 - 1.0));
    let scale = tau * (1.0 - q) / (1.0 - q.powi(k as i32));
    let mut grid = Vec::with_capacity(k + 1);
    let mut t = 0.0;
    let mut step = scale;
    grid.push(0.0);
    for _ in 0..k - 1 {
        t += step;
        grid.push(t);
        step *= q;
    }
    grid.push(tau);
    grid
}

// One transition of BESQ(ν), ν ∈ (-1, 0), conditioned on its first zero
// falling exactly at time tau. Conditioning is the space-time h-transform
// with the first-passage density: the killed BESQ(ν) kernel is itself a
// z^(-|ν|)-transform of the dual BESQ(+|ν|) kernel, and the first-passage
// tilt carries z^(+|ν|), so the two powers cancel and what remains is the
// *dual-index* Poisson-Gamma mixture exponentially tilted by
// e^(-z/2(tau-t_next)) — still conjugate, with both parameters divided by
// c = (tau - t_prev)/(tau - t_next). The final step pins 0 exactly.
fn besq_bridge_to_zero_step<R: Rng + ?Sized>(
    law: BesselLaw,
    x: f64,
    t_prev: f64,
    t_next: f64,
    tau: f64,
    rng: &mut R,
) -> f64 {
    if t_next >= tau {
        return 0.0;
    }
    let dual_index = -law.index(); // = α/2 > 0: dimension 4 - δ
    let dt = t_next - t_prev;
    let c = (tau - t_prev) / (tau - t_next);
    let n = if x > 0.0 {
        rng::poisson(rng, x / (2.0 * dt * c))
    } else {
        0
    };
    rng::gamma(rng, dual_index + 1.0 + n as f64, 2.0 * dt / c)
}

/// Strip (two half-lines) hit by projection-reflected Euler-Maruyama on the
/// trigonometric/hyperbolic pair, with A2(τ_G) = ∫ (X2² - X1²) by trapezoid.
/// Exit side and hyperbolic magnitude make the place y2 = ±X2(τ_G).
pub fn sample_strip_hit<R: Rng + ?Sized>(
    alpha: f64,
    start: (f64, f64),
    cfg: &SimConfig,
    rng: &mut R,
) -> Result<HitSample, SimError> {
    cfg.validate()?;
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(SimError::Precondition("alpha must lie in (0, 2)"));
    }
    let pair = strip_pair_from_start(start.0, start.1)?;
    let drift = (2.0 - alpha) / 2.0;
    let dt = cfg.dt;
    let sqrt_dt = dt.sqrt();
    const HORIZON: u64 = 1_000_000;

    let mut x1 = pair.x1;
    let mut x2 = pair.x2;
    let mut a2 = 0.0f64;
    for _ in 0..HORIZON {
        let n1 = rng::normal(rng);
        let n2 = rng::normal(rng);
        let (x1_new, x2_new_raw, g2) = strip_euler_step(x1, x2, drift, dt, n1, n2);
        let integrand_prev = x2 * x2 - x1 * x1;

        if x1_new.abs() >= 1.0 {
            // crossing inside this step: linear interpolation of the
            // crossing fraction when enabled, full step otherwise
            let theta = if cfg.bridge_correction {
                let gap = 1.0 - x1.abs();
                let travel = x1_new.abs() - x1.abs();
                if travel > 0.0 {
                    (gap / travel).clamp(0.0, 1.0)
                } else {
                    1.0
                }
            } else {
                1.0
            };
            let dt_part = theta * dt;
            let x2_exit =
                (x2 + g2 * dt_part.sqrt() * n2 + drift * x2 * dt_part).max(1.0);
            let integrand_exit = x2_exit * x2_exit - 1.0;
            a2 += 0.5 * (integrand_prev + integrand_exit) * dt_part;
            let place = x1_new.signum() * x2_exit;
            return Ok(HitSample {
                place: vec![place],
                time_functional: Some(a2),
                exact_place: false,
                exact_time: false,
            });
        }

        x1 = x1_new.clamp(-1.0, 1.0);
        x2 = x2_new_raw.max(1.0);
        a2 += 0.5 * (integrand_prev + (x2 * x2 - x1 * x1)) * dt;
    }
    Err(SimError::Horizon)
}

// One raw Euler increment of the strip pair, before projection/crossing
// handling: returns (trigonometric candidate, hyperbolic candidate, the
// hyperbolic diffusion coefficient used).
#[inline]
pub(crate) fn strip_euler_step(
    x1: f64,
    x2: f64,
    drift: f64,
    dt: f64,
    n1: f64,
    n2: f64,
) -> (f64, f64, f64) {
    let sqrt_dt = dt.sqrt();
    let g1 = (1.0 - x1 * x1).max(0.0).sqrt();
    let g2 = (x2 * x2 - 1.0).max(0.0).sqrt();
    let x1_new = x1 + g1 * sqrt_dt * n1 - drift * x1 * dt;
    let x2_new = x2 + g2 * sqrt_dt * n2 + drift * x2 * dt;
    (x1_new, x2_new, g2)
}

/// Half-space hit in R^(n+1) by the strong-Markov two-stage construction:
/// an exact first passage of the Bessel coordinate, a Gaussian displacement,
/// and (if the Brownian coordinate lands in the closed negative half-line)
/// an exact 2D boundary stage whose duration comes from the A1 skeleton.
pub fn sample_halfspace_hit_nd<R: Rng + ?Sized>(
    alpha: f64,
    n: usize,
    start: &[f64],
    cfg: &SimConfig,
    rng: &mut R,
) -> Result<HitSample, SimError> {
    cfg.validate()?;
    if n < 1 {
        return Err(SimError::Precondition("half-space sampler needs n >= 1"));
    }
    if start.len() != n + 1 {
        return Err(SimError::Precondition("start must have n + 1 coordinates"));
    }
    let y1 = start[0];
    if !(y1 >= 0.0) {
        return Err(SimError::Precondition("Bessel coordinate must be >= 0"));
    }
    if y1 == 0.0 && start[1] > 0.0 {
        return Err(SimError::Precondition(
            "start lies on the removed half-space {y1 = 0, y2 > 0}",
        ));
    }

    // Stage 1: ride the Bessel coordinate to zero, exactly.
    let (first_hit, brownian_at_hit) = if y1 > 0.0 {
        let params = HitLawParams::new(alpha, y1)?;
        let t = bessel_core::bes_hit_zero_sample(params, rng);
        let moved: Vec<f64> = start[1..]
            .iter()
            .map(|&c| c + t.sqrt() * rng::normal(rng))
            .collect();
        (t, moved)
    } else {
        (0.0, start[1..].to_vec())
    };

    if brownian_at_hit[0] >= 0.0 {
        // exited on first touch: both time and place are exact
        return Ok(HitSample {
            place: brownian_at_hit,
            time_functional: Some(first_hit),
            exact_place: true,
            exact_time: y1 > 0.0,
        });
    }

    // Stage 2: exact 2D boundary stage for (Y1, B2) from (0, u), u < 0; the
    // remaining coordinates ride independent Gaussians over the (skeleton)
    // stage duration.
    let u = brownian_at_hit[0];
    let stage2 = sample_halfline_hit_with_time(alpha, (0.0, u), cfg, rng)?;
    let tau2 = stage2.time_functional.expect("A1 clock present");
    let mut place = Vec::with_capacity(n);
    place.push(stage2.place[0]);
    for &c in &brownian_at_hit[1..] {
        place.push(c + tau2.sqrt() * rng::normal(rng));
    }
    Ok(HitSample {
        place,
        time_functional: Some(first_hit + tau2),
        exact_place: n == 1,
        exact_time: false,
    })
}

/// Hit of the half-line complement in the plane spanned inside R^3, for
/// 1 < α < 2: the radial pair (Y1, B2) collapses to one Bessel coordinate of
/// index (1-α)/2, reducing everything to the half-space sampler with
/// (n-1, α-1).
pub fn sample_halfline_complement_hit<R: Rng + ?Sized>(
    alpha: f64,
    start: &[f64; 3],
    cfg: &SimConfig,
    rng: &mut R,
) -> Result<HitSample, SimError> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(SimError::Precondition(
            "the half-line complement reduction needs alpha in (1, 2)",
        ));
    }
    let radial = start[0].hypot(start[1]);
    if radial == 0.0 && start[2] > 0.0 {
        return Err(SimError::Precondition(
            "start lies on the removed half-line {y1 = y2 = 0, y3 > 0}",
        ));
    }
    let reduced_start = [radial, start[2]];
    sample_halfspace_hit_nd(alpha - 1.0, 1, &reduced_start, cfg, rng)
}

/// Run `per_path` once per path on its own substream, in parallel, and
/// collect results in path order (thread-count independent).
pub fn parallel_paths<T, F>(cfg: &SimConfig, per_path: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut rand_pcg::Pcg64Mcg, u64) -> T + Sync,
{
    (0..cfg.n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed, i);
            per_path(&mut rng, i)
        })
        .collect()
}
