//! Monte Carlo against closed forms beyond the acceptance suite: the
//! multidimensional half-space sampler's time-weighted exit law and its
//! projection consistency.

use hitkit::diffusion_sim::{parallel_paths, sample_halfspace_hit_nd, SimConfig};
use hitkit::kernels::{halfspace_h_lambda, StabilityParams};
use hitkit::quadrature::{integrate_finite_singular, QuadSpec};

#[test]
fn halfspace_n2_time_weighted_mass_matches_h_lambda() {
    // start (0, -1, 0), α = 1, λ = 1: E[e^(-λ²τ/2); place ∈ A] over the
    // rectangle A = (0.5, 1.5) × (-0.5, 0.5) against the 2D quadrature of
    // the boundary Laplace kernel.
    let alpha = 1.0;
    let lambda = 1.0f64;
    let cfg = SimConfig {
        seed: 97,
        n_paths: 200_000,
        substeps: 64,
        ..SimConfig::default()
    };
    let weights = parallel_paths(&cfg, |rng, _| {
        let s = sample_halfspace_hit_nd(alpha, 2, &[0.0, -1.0, 0.0], &cfg, rng).unwrap();
        let in_box = s.place[0] > 0.5 && s.place[0] < 1.5 && s.place[1].abs() < 0.5;
        if in_box {
            (-lambda * lambda * s.time_functional.unwrap() / 2.0).exp()
        } else {
            0.0
        }
    });
    let mc: f64 = weights.iter().sum::<f64>() / weights.len() as f64;

    let p = StabilityParams::with_lambda(alpha, lambda).unwrap();
    let y = [-1.0, 0.0];
    let inner = |s1: f64| {
        integrate_finite_singular(
            |s2: f64| halfspace_h_lambda(&p, &y, &[s1, s2]).unwrap(),
            -0.5,
            0.5,
            (0.0, 0.0),
            &QuadSpec::with_tol(1e-9),
        )
        .unwrap()
        .value
    };
    let target = integrate_finite_singular(inner, 0.5, 1.5, (0.0, 0.0), &QuadSpec::with_tol(1e-7))
        .unwrap()
        .value;
    let rel = (mc / target - 1.0).abs();
    assert!(rel < 0.03, "mc {mc:.5e} vs quadrature {target:.5e} (rel {rel:.4})");
}

#[test]
fn halfspace_n2_first_coordinate_projects_to_n1_law() {
    // the removed set constrains only (y1, y2): the σ₂ marginal at n = 2
    // equals the n = 1 exit law (two-sample KS)
    let alpha = 1.2;
    let cfg = SimConfig {
        seed: 53,
        n_paths: 60_000,
        substeps: 16,
        ..SimConfig::default()
    };
    let mut a: Vec<f64> = parallel_paths(&cfg, |rng, _| {
        sample_halfspace_hit_nd(alpha, 2, &[0.0, -1.0, 0.3], &cfg, rng).unwrap().place[0]
    });
    let cfg_b = SimConfig { seed: 54, ..cfg };
    let mut b: Vec<f64> = parallel_paths(&cfg_b, |rng, _| {
        sample_halfspace_hit_nd(alpha, 1, &[0.0, -1.0], &cfg_b, rng).unwrap().place[0]
    });
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let n = a.len();
    let (mut i, mut j, mut ks) = (0usize, 0usize, 0.0f64);
    while i < n && j < n {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        ks = ks.max((i as f64 - j as f64).abs() / n as f64);
    }
    let critical = 1.63 * (2.0 / n as f64).sqrt(); // ≈ 1% level
    assert!(ks < critical, "KS {ks} vs {critical}");
}
