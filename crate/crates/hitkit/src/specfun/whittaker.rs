//! Whittaker functions M and W as direct compositions of the confluent
//! hypergeometric pair.

use super::hyper::{hyp1f1, hyp_u};
use super::SpecFunError;

/// Whittaker function of the first kind,
/// M_{κ,μ}(z) = z^(μ+1/2) e^(-z/2) Φ(1/2 - κ + μ, 2μ + 1; z).
pub fn whittaker_m(kappa: f64, mu: f64, z: f64) -> Result<f64, SpecFunError> {
    if !(z > 0.0) {
        return Err(SpecFunError::Domain("whittaker_m requires z > 0"));
    }
    Ok(z.powf(mu + 0.5) * (-z / 2.0).exp() * hyp1f1(0.5 - kappa + mu, 2.0 * mu + 1.0, z)?)
}

/// Whittaker function of the second kind,
/// W_{κ,μ}(z) = z^(μ+1/2) e^(-z/2) Ψ(1/2 - κ + μ, 2μ + 1; z).
///
/// Satisfies W_{κ,μ} = W_{κ,-μ} identically.
pub fn whittaker_w(kappa: f64, mu: f64, z: f64) -> Result<f64, SpecFunError> {
    if !(z > 0.0) {
        return Err(SpecFunError::Domain("whittaker_w requires z > 0"));
    }
    Ok(z.powf(mu + 0.5) * (-z / 2.0).exp() * hyp_u(0.5 - kappa + mu, 2.0 * mu + 1.0, z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn w_symmetry_in_mu() {
        let (kappa, mu, z) = (0.3, 0.2, 1.5);
        let plus = whittaker_w(kappa, mu, z).unwrap();
        let minus = whittaker_w(kappa, -mu, z).unwrap();
        assert!(
            (plus - minus).abs() <= 1e-10 * plus.abs(),
            "{plus} vs {minus}"
        );
    }

    #[test]
    fn m_is_the_definition() {
        // M_{0, 1/4}(1) = e^(-1/2) Φ(3/4, 3/2; 1)
        let got = whittaker_m(0.0, 0.25, 1.0).unwrap();
        let expect = (-0.5f64).exp() * hyp1f1(0.75, 1.5, 1.0).unwrap();
        assert!((got - expect).abs() < 1e-14 * expect);
    }

    #[test]
    fn w_small_z_asymptotic() {
        // W_{0,μ}(z) ≈ z^(1/2-μ) Γ(2μ)/Γ(1/2+μ) as z → 0, for 0 < μ < 1/2.
        // The first correction enters at O(z^(2μ)), which sets the tolerance.
        let mu = 0.2;
        for (z, tol) in [(1e-8, 1e-3), (1e-12, 1e-4)] {
            let got = whittaker_w(0.0, mu, z).unwrap();
            let lead = z.powf(0.5 - mu) * gamma(2.0 * mu) / gamma(0.5 + mu);
            assert!((got / lead - 1.0).abs() < tol, "z={z}: ratio {}", got / lead);
        }
    }

    #[test]
    fn w_kappa_zero_is_bessel_k() {
        // W_{0,μ}(z) = √(z/π) K_μ(z/2)
        let (mu, z) = (0.25, 2.0);
        let got = whittaker_w(0.0, mu, z).unwrap();
        let expect = (z / std::f64::consts::PI).sqrt()
            * crate::specfun::bessel_k(mu, z / 2.0).unwrap();
        assert!((got - expect).abs() < 1e-10 * expect, "got {got}, want {expect}");
    }

    #[test]
    fn domain_errors() {
        assert!(whittaker_m(0.1, 0.2, 0.0).is_err());
        assert!(whittaker_w(0.1, 0.2, -1.0).is_err());
    }
}
