//! Physical constants and the mass combinations every model is built from.
//!
//! Internally everything is in natural units (ħ = c = 1) with masses and
//! energies in MeV and lengths in 1/MeV. Energies are converted to eV only at
//! the reporting boundary via [`Constants::ev_per_mev`].

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Metres per femtometre.
const METRE_PER_FM: f64 = 1.0e-15;

/// Fundamental inputs. CODATA-2014 values by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Fine-structure constant.
    pub alpha: f64,
    /// Electron rest mass (MeV).
    pub m_e: f64,
    /// Proton rest mass (MeV).
    pub m_p: f64,
    /// ħc (MeV·fm).
    pub hbar_c: f64,
    /// Fixed 10⁶ scale between MeV and eV.
    pub ev_per_mev: f64,
}

impl Default for Constants {
    fn default() -> Self {
        default_constants()
    }
}

/// CODATA-2014 constant set.
pub fn default_constants() -> Constants {
    Constants {
        alpha: 7.297_352_566_4e-3,
        m_e: 0.510_998_946_1,
        m_p: 938.272_081_3,
        hbar_c: 197.326_978_8,
        ev_per_mev: 1.0e6,
    }
}

/// Which mass enters a one-body formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MassChoice {
    /// Bare electron mass (static, infinitely heavy nucleus).
    #[default]
    Electron,
    /// Reduced mass m_e·m_p/(m_e+m_p).
    Reduced,
}

/// Mass combinations derived from a [`Constants`] set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedMasses {
    pub m_e: f64,
    pub m_p: f64,
    /// m_p + m_e
    pub m_plus: f64,
    /// m_p − m_e
    pub m_minus: f64,
    /// m_plus / 2
    pub m_a: f64,
    /// Reduced mass.
    pub mu: f64,
}

impl DerivedMasses {
    /// m_plus² − m_minus², i.e. 4·m_p·m_e, without forming either square.
    pub fn square_gap(&self) -> f64 {
        4.0 * self.m_p * self.m_e
    }
}

/// Builds the mass combinations. The reduced mass is a single product-over-sum.
pub fn derive(c: &Constants) -> DerivedMasses {
    let m_plus = c.m_p + c.m_e;
    DerivedMasses {
        m_e: c.m_e,
        m_p: c.m_p,
        m_plus,
        m_minus: c.m_p - c.m_e,
        m_a: 0.5 * m_plus,
        mu: c.m_e * c.m_p / m_plus,
    }
}

impl Constants {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("alpha", self.alpha),
            ("m_e", self.m_e),
            ("m_p", self.m_p),
            ("hbar_c", self.hbar_c),
            ("ev_per_mev", self.ev_per_mev),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        if self.alpha >= 0.01 {
            return Err(Error::InvalidParameter(format!(
                "alpha must be below 0.01, got {}",
                self.alpha
            )));
        }
        if self.m_e > self.m_p {
            return Err(Error::InvalidParameter(format!(
                "electron mass {} exceeds proton mass {}",
                self.m_e, self.m_p
            )));
        }
        Ok(())
    }

    pub fn derive(&self) -> DerivedMasses {
        derive(self)
    }

    /// Mass selected by `choice` (MeV).
    pub fn mass(&self, choice: MassChoice) -> f64 {
        match choice {
            MassChoice::Electron => self.m_e,
            MassChoice::Reduced => derive(self).mu,
        }
    }

    /// h·c in eV·m.
    pub fn hc_ev_m(&self) -> f64 {
        2.0 * PI * self.hbar_c * self.ev_per_mev * METRE_PER_FM
    }

    /// Rydberg constant R∞ = m_e α²/2 / (hc), in 1/m.
    ///
    /// The conversion divides by h·c = 2πħc; dividing by ħc alone would be
    /// off by 2π from the tabulated value.
    pub fn rydberg_constant(&self) -> f64 {
        let energy_mev = 0.5 * self.m_e * self.alpha * self.alpha;
        energy_mev / (2.0 * PI * self.hbar_c) / METRE_PER_FM
    }

    /// m·α²/2 in eV.
    pub fn rydberg_energy(&self, choice: MassChoice) -> f64 {
        0.5 * self.mass(choice) * self.alpha * self.alpha * self.ev_per_mev
    }

    /// Applies a `key = value` override. Returns `false` for unknown keys.
    pub fn set_by_key(&mut self, key: &str, value: f64) -> bool {
        match key {
            "alpha" => self.alpha = value,
            "m_e_mev" => self.m_e = value,
            "m_p_mev" => self.m_p = value,
            "hbar_c" => self.hbar_c = value,
            _ => return false,
        }
        true
    }
}

/// Free functions mirroring the methods, for callers that prefer them.
pub fn rydberg_constant(c: &Constants) -> f64 {
    c.rydberg_constant()
}

pub fn rydberg_energy(c: &Constants, choice: MassChoice) -> f64 {
    c.rydberg_energy(choice)
}
