//! Gegenbauer (ultraspherical) polynomials by the three-term recurrence.

/// C_n^(ρ)(x) for integer degree n ≥ 0, ρ > 0, x ∈ [-1, 1].
pub fn gegenbauer_c(n: u32, rho: f64, x: f64) -> f64 {
    debug_assert!(rho > 0.0);
    debug_assert!((-1.0..=1.0).contains(&x));
    match n {
        0 => 1.0,
        1 => 2.0 * rho * x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 2.0 * rho * x;
            for k in 2..=n {
                let kk = k as f64;
                let next = (2.0 * x * (kk + rho - 1.0) * cur - (kk + 2.0 * rho - 2.0) * prev) / kk;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}
