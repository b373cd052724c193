//! Quasiclassical complex-mass solution for the two-body bound state.
//!
//! The squared eigenmass solves s² − 4e²s − (2 m_a m_− v)² = 0 with
//! e² = m_a²(1 − v²), v = α/(2N), b = m_a m_− v. Writing ε² = e² + i b, the
//! centered mass and imaginary part are √(2(|ε²| ± e²)).
//!
//! The binding energy is ~1e-8 of the rest mass, so every quantity that is
//! a small difference of large ones is rewritten algebraically. In
//! particular, with D = |ε²| + e²:
//!
//! ```text
//! |ε²| − e²  = b² / D
//! M² − m_+²  = v² (−8 m_a² m_p m_e + 8 m_a⁴ v² − m_+² b²/D) / D
//! ```

use serde::{Deserialize, Serialize};

use crate::constants::DerivedMasses;
use crate::error::{Error, Result};

/// A squared mass kept as (threshold m_+², offset s − m_+²).
///
/// Near threshold the offset carries all the information; storing it
/// directly avoids recovering it by subtraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquaredMass {
    threshold: f64,
    offset: f64,
}

impl SquaredMass {
    pub fn from_offset(offset: f64, d: &DerivedMasses) -> Self {
        Self {
            threshold: d.m_plus * d.m_plus,
            offset,
        }
    }

    /// Builds from an absolute value; the offset is formed by subtraction.
    pub fn from_value(s: f64, d: &DerivedMasses) -> Self {
        let threshold = d.m_plus * d.m_plus;
        Self {
            threshold,
            offset: s - threshold,
        }
    }

    /// s in MeV².
    pub fn value(&self) -> f64 {
        self.threshold + self.offset
    }

    /// s − m_+² in MeV².
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// s − m_−², using m_+² − m_−² = 4 m_p m_e.
    pub fn above_lower_threshold(&self, d: &DerivedMasses) -> f64 {
        self.offset + d.square_gap()
    }
}

/// The two roots of the squared-mass quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquaredMassRoots {
    pub plus: SquaredMass,
    pub minus: SquaredMass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Atom,
    AntiAtom,
}

/// Complex eigenmass M = M^Re + i M^Im of one level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMass {
    /// Centered eigenmass (MeV).
    pub re: f64,
    /// Imaginary part (MeV).
    pub im: f64,
    pub branch: Branch,
}

impl ComplexMass {
    /// Negative-sign branch: both parts flip.
    pub fn anti_atom(self) -> Self {
        let branch = match self.branch {
            Branch::Atom => Branch::AntiAtom,
            Branch::AntiAtom => Branch::Atom,
        };
        Self {
            re: -self.re,
            im: -self.im,
            branch,
        }
    }

    /// Γ = 2|M^Im| (MeV).
    pub fn width(&self) -> f64 {
        2.0 * self.im.abs()
    }
}

/// Intermediate quantities for principal number `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcTerms {
    /// v_N = α/(2N)
    pub v: f64,
    /// e_N² = m_a²(1 − v²)
    pub e2: f64,
    /// b = m_a m_− v
    pub b: f64,
    /// |ε²| = √(e⁴ + b²)
    pub modulus: f64,
    /// |ε²| + e²
    pub sum: f64,
}

impl QcTerms {
    pub fn new(n: f64, alpha: f64, d: &DerivedMasses) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(Error::domain("qc terms", format!("principal number {n} < 1")));
        }
        let v = alpha / (2.0 * n);
        let e2 = d.m_a * d.m_a * (1.0 - v * v);
        let b = d.m_a * d.m_minus * v;
        let modulus = e2.hypot(b);
        Ok(Self {
            v,
            e2,
            b,
            modulus,
            sum: modulus + e2,
        })
    }

    /// |ε²| − e² without subtraction.
    pub fn modulus_minus_e2(&self) -> f64 {
        self.b * self.b / self.sum
    }

    /// M^Re² − m_+², all terms O(v²) with a common sign.
    pub fn threshold_offset(&self, d: &DerivedMasses) -> f64 {
        let ma2 = d.m_a * d.m_a;
        let v2 = self.v * self.v;
        let bracket =
            -8.0 * ma2 * d.m_p * d.m_e + 8.0 * ma2 * ma2 * v2 - d.m_plus * d.m_plus * self.b * self.b / self.sum;
        v2 * bracket / self.sum
    }

    pub fn roots(&self, d: &DerivedMasses) -> SquaredMassRoots {
        let plus = SquaredMass::from_offset(self.threshold_offset(d), d);
        let minus = SquaredMass::from_value(-2.0 * self.modulus_minus_e2(), d);
        SquaredMassRoots { plus, minus }
    }

    pub fn complex_mass(&self) -> ComplexMass {
        ComplexMass {
            re: (2.0 * self.sum).sqrt(),
            im: self.b * (2.0 / self.sum).sqrt(),
            branch: Branch::Atom,
        }
    }

    /// T = M^Re − m_+ in MeV.
    pub fn kinetic_energy(&self, d: &DerivedMasses) -> f64 {
        let re = self.complex_mass().re;
        self.threshold_offset(d) / (re + d.m_plus)
    }
}
