//! Modified Coulomb interaction with the proton dipole form factor.

use serde::{Deserialize, Serialize};

use crate::constants::{Constants, DerivedMasses};
use crate::error::{Error, Result};

/// Default form-factor scale Λ (MeV).
pub const DEFAULT_LAMBDA_MEV: f64 = 840.0;

/// Coupling, form-factor scale and nuclear charge of the interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub alpha: f64,
    /// Λ in MeV.
    pub lambda: f64,
    pub z: u32,
}

impl PotentialParams {
    pub fn new(alpha: f64, lambda: f64, z: u32) -> Result<Self> {
        let params = Self { alpha, lambda, z };
        params.validate()?;
        Ok(params)
    }

    pub fn from_constants(c: &Constants) -> Self {
        Self {
            alpha: c.alpha,
            lambda: DEFAULT_LAMBDA_MEV,
            z: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "coupling must be positive, got {}",
                self.alpha
            )));
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "form-factor scale must be positive, got {}",
                self.lambda
            )));
        }
        if self.z == 0 {
            return Err(Error::InvalidParameter("nuclear charge must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Dipole form factor (Λ²/(q²+Λ²))².
pub fn form_factor(q: f64, p: &PotentialParams) -> f64 {
    let t = q / p.lambda;
    let f = 1.0 / (1.0 + t * t);
    f * f
}

/// Momentum-space running coupling α·F(q).
pub fn running_alpha_q(q: f64, p: &PotentialParams) -> f64 {
    p.alpha * form_factor(q, p)
}

/// Configuration-space running coupling α·(Λ²r²/(1+Λ²r²))².
///
/// Written as 1/(1 + 1/(Λr)²) so that both r = 0 and r = ∞ evaluate
/// without 0/0 or ∞/∞.
pub fn running_alpha_r(r: f64, p: &PotentialParams) -> f64 {
    let x = p.lambda * r;
    let g = 1.0 / (1.0 + 1.0 / (x * x));
    p.alpha * g * g
}

/// −Z·α_H(r)/r in MeV. Returns the limit 0 at r = 0.
pub fn potential_r(r: f64, p: &PotentialParams) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    -(p.z as f64) * running_alpha_r(r, p) / r
}

/// Position-dependent total mass M_H(r) = m_+ + W(r).
pub fn mass_function(r: f64, p: &PotentialParams, d: &DerivedMasses) -> f64 {
    d.m_plus + potential_r(r, p)
}

/// One of the two bound constituents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Particle {
    Electron,
    Proton,
}

/// w_i(r) = m_i + W(r)/2.
pub fn particle_mass(particle: Particle, r: f64, p: &PotentialParams, d: &DerivedMasses) -> f64 {
    let rest = match particle {
        Particle::Electron => d.m_e,
        Particle::Proton => d.m_p,
    };
    rest + 0.5 * potential_r(r, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{default_constants, derive};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params() -> PotentialParams {
        PotentialParams::from_constants(&default_constants())
    }

    #[test]
    fn form_factor_values() {
        let p = params();
        assert_eq!(form_factor(0.0, &p), 1.0);
        assert_eq!(form_factor(p.lambda, &p), 0.25);
        assert_eq!(form_factor(840.0, &p), 0.25);
    }

    #[test]
    fn momentum_coupling_limits() {
        let p = params();
        assert_eq!(running_alpha_q(0.0, &p), p.alpha);
        assert_eq!(running_alpha_q(f64::INFINITY, &p), 0.0);
        assert_eq!(running_alpha_q(p.lambda, &p), p.alpha / 4.0);
    }

    #[test]
    fn configuration_coupling_values() {
        let p = params();
        assert_eq!(running_alpha_r(0.0, &p), 0.0);
        assert_relative_eq!(running_alpha_r(1.0 / p.lambda, &p), p.alpha / 4.0, max_relative = 1e-15);
        let far = running_alpha_r(1000.0 / p.lambda, &p) / p.alpha;
        assert!((far - (1.0 - 2e-6)).abs() < 1e-7);
        assert_eq!(running_alpha_r(f64::INFINITY, &p), p.alpha);
    }

    #[test]
    fn potential_values() {
        let p = params();
        let d = derive(&default_constants());
        assert_eq!(potential_r(0.0, &p), 0.0);
        assert!(potential_r(1e-12, &p).abs() < 1e-20);
        assert_relative_eq!(
            potential_r(1.0 / p.lambda, &p),
            -p.alpha * p.lambda / 4.0,
            max_relative = 1e-15
        );

        // At the Bohr radius the form factor suppresses the Coulomb value by
        // 2/(Λ a_B)² to leading order.
        let a_bohr = 1.0 / (d.mu * p.alpha);
        let coulomb = -p.alpha / a_bohr;
        let deviation = 1.0 - potential_r(a_bohr, &p) / coulomb;
        let series = 2.0 / (p.lambda * a_bohr).powi(2);
        assert!((deviation - series).abs() < 1e-13, "{deviation} vs {series}");
    }

    #[test]
    fn potential_has_single_minimum() {
        let p = params();
        let radii: Vec<f64> = (0..3200).map(|i| 1e-10 * 10f64.powf(i as f64 * 0.005)).collect();
        let values: Vec<f64> = radii.iter().map(|&r| potential_r(r, &p)).collect();
        let (imin, _) = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert!(imin > 0 && imin < values.len() - 1);
        assert!(values[..=imin].windows(2).all(|w| w[1] <= w[0]));
        assert!(values[imin..].windows(2).all(|w| w[1] >= w[0]));
        assert!(values[0].abs() < 1e-6 && values.last().unwrap().abs() < 1e-6);
    }

    #[test]
    fn mass_function_limits() {
        let p = params();
        let d = derive(&default_constants());
        assert_eq!(mass_function(0.0, &p, &d), d.m_plus);
        assert_relative_eq!(mass_function(1e12, &p, &d), d.m_plus, max_relative = 1e-15);
        for r in [1e-4, 0.01, 1.0, 300.0] {
            let sum = particle_mass(Particle::Electron, r, &p, &d) + particle_mass(Particle::Proton, r, &p, &d);
            assert_relative_eq!(sum, mass_function(r, &p, &d), max_relative = 1e-15);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(PotentialParams::new(0.0073, 840.0, 1).is_ok());
        assert!(PotentialParams::new(0.0073, 0.0, 1).is_err());
        assert!(PotentialParams::new(0.0073, 840.0, 0).is_err());
        assert!(PotentialParams::new(-1.0, 840.0, 1).is_err());
    }

    proptest! {
        #[test]
        fn running_alpha_r_monotone(a in 0.0f64..10.0, b in 0.0f64..10.0) {
            let p = params();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(running_alpha_r(lo / p.lambda, &p) <= running_alpha_r(hi / p.lambda, &p));
        }

        #[test]
        fn form_factor_strictly_decreasing(a in 0.0f64..5000.0, gap in 1e-3f64..5000.0) {
            let p = params();
            prop_assert!(form_factor(a + gap, &p) < form_factor(a, &p));
        }

        #[test]
        fn potential_finite_and_nonpositive(r in 0.0f64..1e6) {
            let p = params();
            let v = potential_r(r, &p);
            prop_assert!(v.is_finite() && v <= 0.0);
        }
    }

    #[test]
    fn coupling_limits_bridge() {
        // Only the limits are shared between the two representations.
        let p = params();
        assert_eq!(running_alpha_q(0.0, &p), running_alpha_r(f64::INFINITY, &p));
        assert_eq!(running_alpha_q(f64::INFINITY, &p), running_alpha_r(0.0, &p));
    }
}
