//! Numerical check of the quasiclassical quantization condition.
//!
//! For a trial squared mass s the radial radicand is
//!
//! ```text
//! Q(r) = K(s)·[s − M_H(r)²] − (l + 1/2)² / r²,   K(s) = (1 − m_−²/s)/4
//! ```
//!
//! and at the QC eigenvalue the integral of √Q between the turning points
//! must equal π(k + 1/2). The squared mass is handled as an offset from
//! m_+² throughout; forming s − m_+² by subtraction would cost eight digits.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::constants::{Constants, DerivedMasses};
use crate::error::{Error, Result};
use crate::potential::{running_alpha_r, PotentialParams};
use crate::quadrature::{integrate_adaptive, integrate_fixed, Integral};
use crate::spectra::{qc_squared_mass, QuantumState, SquaredMass};

/// Relative accuracy requested from the phase-space quadrature.
pub const PHASE_INTEGRAL_TOLERANCE: f64 = 1e-9;
const MAX_INTERVALS: usize = 2000;
const TURNING_POINT_TOLERANCE: f64 = 1e-13;

/// |M| = (l + 1/2), the same for every central potential.
pub fn angular_eigenmomentum(l: u32) -> f64 {
    l as f64 + 0.5
}

/// Radial problem at fixed trial squared mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProblem {
    pub s: SquaredMass,
    pub l: u32,
    /// K(s)
    pub kinematic_factor: f64,
    /// l + 1/2
    pub angular_momentum: f64,
    pub params: PotentialParams,
    pub masses: DerivedMasses,
}

impl RadialProblem {
    pub fn new(s: SquaredMass, l: u32, params: PotentialParams, masses: DerivedMasses) -> Self {
        let kinematic_factor = s.above_lower_threshold(&masses) / (4.0 * s.value());
        Self {
            s,
            l,
            kinematic_factor,
            angular_momentum: angular_eigenmomentum(l),
            params,
            masses,
        }
    }

    /// Problem at the physical root of the squared-mass quadratic for `state`.
    pub fn at_qc_root(state: QuantumState, params: PotentialParams, c: &Constants) -> Self {
        let d = c.derive();
        let roots = qc_squared_mass(state, &d, c);
        Self::new(roots.plus, state.l, params, d)
    }

    /// Z·α_H(r)/r, the magnitude of the potential.
    fn well_depth(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        self.params.z as f64 * running_alpha_r(r, &self.params) / r
    }

    /// s − M_H(r)² expanded around m_+² to avoid cancellation.
    fn mass_gap(&self, r: f64) -> f64 {
        let w = self.well_depth(r);
        self.s.offset() + w * (2.0 * self.masses.m_plus - w)
    }

    /// Squared relative momentum p²(r) = K(s)[s − M_H(r)²].
    pub fn momentum_squared(&self, r: f64) -> f64 {
        self.kinematic_factor * self.mass_gap(r)
    }

    /// Q(r) = p²(r) − (l+1/2)²/r².
    pub fn radicand(&self, r: f64) -> f64 {
        self.momentum_squared(r) - self.angular_momentum.powi(2) / (r * r)
    }

    /// r²·Q(r), which has the same sign as Q and is finite at the origin.
    fn scaled_radicand(&self, r: f64) -> f64 {
        r * r * self.momentum_squared(r) - self.angular_momentum.powi(2)
    }
}

/// Inner and outer classical turning points (1/MeV).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPoints {
    pub r1: f64,
    pub r2: f64,
}

fn bisect<F: Fn(f64) -> f64>(g: F, mut inside: f64, mut outside: f64) -> f64 {
    // g(inside) > 0 ≥ g(outside)
    for _ in 0..400 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if g(mid) > 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
        if (inside - outside).abs() <= TURNING_POINT_TOLERANCE * 0.01 * inside.abs().max(outside.abs()) {
            break;
        }
    }
    0.5 * (inside + outside)
}

/// Brackets the allowed region around the Coulomb estimate of its centre,
/// then bisects each edge.
pub fn find_turning_points(p: &RadialProblem) -> Result<TurningPoints> {
    let offset = p.s.offset();
    let no_region = || Error::NoBoundRegion {
        s_offset: offset,
        l: p.l,
    };
    if !(offset < 0.0) || !(p.kinematic_factor > 0.0) {
        return Err(no_region());
    }
    let g = |r: f64| p.scaled_radicand(r);

    // Peak of r²Q for a pure Coulomb tail.
    let coulomb_peak = p.masses.m_plus * p.params.z as f64 * p.params.alpha / -offset;
    let mut inside = coulomb_peak;
    if !(g(inside) > 0.0) {
        // Scan a logarithmic grid for any allowed point.
        let lo = 1e-3 / p.params.lambda;
        let hi = 1e3 * coulomb_peak.max(lo);
        let steps = 4000;
        let ratio = (hi / lo).powf(1.0 / steps as f64);
        inside = (0..=steps)
            .map(|i| lo * ratio.powi(i))
            .find(|&r| g(r) > 0.0)
            .ok_or_else(no_region)?;
    }

    let mut lower = inside;
    while g(lower) > 0.0 {
        lower *= 0.5;
        if lower < f64::MIN_POSITIVE {
            return Err(no_region());
        }
    }
    let mut upper = inside;
    while g(upper) > 0.0 {
        upper *= 2.0;
        if !upper.is_finite() {
            return Err(no_region());
        }
    }

    let r1 = bisect(g, inside, lower);
    let r2 = bisect(g, inside, upper);
    Ok(TurningPoints { r1, r2 })
}

/// Integrand of the phase integral after r = r1 + (r2 − r1)·sin²θ.
fn mapped_integrand(p: &RadialProblem, tp: TurningPoints) -> impl Fn(f64) -> f64 + '_ {
    let width = tp.r2 - tp.r1;
    let (r1, r2) = (tp.r1, tp.r2);
    move |theta: f64| {
        let (sin, cos) = theta.sin_cos();
        let r = (r1 + width * sin * sin).clamp(r1, r2);
        p.radicand(r).max(0.0).sqrt() * 2.0 * width * sin * cos
    }
}

/// ∫_{r1}^{r2} √Q dr with its quadrature error estimate.
pub fn phase_integral_detailed(p: &RadialProblem) -> Result<(Integral, TurningPoints)> {
    let tp = find_turning_points(p)?;
    let f = mapped_integrand(p, tp);
    let integral = integrate_adaptive(f, 0.0, PI / 2.0, 0.0, PHASE_INTEGRAL_TOLERANCE, MAX_INTERVALS)?;
    Ok((integral, tp))
}

/// ∫_{r1}^{r2} √Q(r) dr.
pub fn phase_integral(p: &RadialProblem) -> Result<f64> {
    phase_integral_detailed(p).map(|(i, _)| i.value)
}

/// Same integral by a fixed `nodes`-point Gauss–Legendre rule (for self-checks).
pub fn phase_integral_fixed(p: &RadialProblem, nodes: usize) -> Result<f64> {
    let tp = find_turning_points(p)?;
    Ok(integrate_fixed(mapped_integrand(p, tp), 0.0, PI / 2.0, nodes))
}

/// Residue contribution from infinity: π α m_+ √((s − m_−²)/(s (m_+² − s))).
pub fn analytic_i_infinity(s: SquaredMass, d: &DerivedMasses, c: &Constants) -> Result<f64> {
    let above = s.above_lower_threshold(d);
    let below = -s.offset();
    if !(above > 0.0 && below > 0.0) {
        return Err(Error::domain(
            "analytic_i_infinity",
            format!("s = {} outside (m_-², m_+²)", s.value()),
        ));
    }
    Ok(PI * c.alpha * d.m_plus * (above / (s.value() * below)).sqrt())
}

/// Constants plus interaction parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcEnvironment {
    pub constants: Constants,
    pub params: PotentialParams,
}

impl QcEnvironment {
    pub fn new(constants: Constants, params: PotentialParams) -> Self {
        Self { constants, params }
    }
}

impl Default for QcEnvironment {
    fn default() -> Self {
        let constants = Constants::default();
        Self {
            constants,
            params: PotentialParams::from_constants(&constants),
        }
    }
}

/// (phase integral at s₊ − π(k+1/2)) / π(k+1/2).
pub fn quantization_residual(state: QuantumState, env: &QcEnvironment) -> Result<f64> {
    Ok(verify_state(state, env)?.residual)
}

/// One line of the verification report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub state: QuantumState,
    /// s₊ in MeV².
    pub s_plus: f64,
    /// s₊ − m_+² in MeV².
    pub s_offset: f64,
    pub r1: f64,
    pub r2: f64,
    pub phase_integral: f64,
    pub quadrature_error: f64,
    /// Relative deviation of the phase integral from π(k+1/2).
    pub residual: f64,
    /// I∞(s₊) / (2πN) − 1.
    pub i_infinity_check: f64,
}

pub fn verify_state(state: QuantumState, env: &QcEnvironment) -> Result<VerificationRow> {
    let c = &env.constants;
    let d = c.derive();
    let problem = RadialProblem::at_qc_root(state, env.params, c);
    let (integral, tp) = phase_integral_detailed(&problem)?;
    let target = PI * (state.k as f64 + 0.5);
    let i_inf = analytic_i_infinity(problem.s, &d, c)?;
    Ok(VerificationRow {
        state,
        s_plus: problem.s.value(),
        s_offset: problem.s.offset(),
        r1: tp.r1,
        r2: tp.r2,
        phase_integral: integral.value,
        quadrature_error: integral.error,
        residual: (integral.value - target) / target,
        i_infinity_check: i_inf / (2.0 * PI * state.qc_principal()) - 1.0,
    })
}

pub fn verification_report(states: &[QuantumState], env: &QcEnvironment) -> Result<Vec<VerificationRow>> {
    states.iter().map(|&s| verify_state(s, env)).collect()
}
