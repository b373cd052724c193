//! Closed-form level formulas for the analytic models.
//!
//! Every formula is evaluated in a form that avoids subtracting the rest mass
//! from a nearly equal total energy; the reported values are binding
//! energies in eV.

mod qc;
mod state;

pub use qc::{Branch, ComplexMass, QcTerms, SquaredMass, SquaredMassRoots};
pub use state::{parse_state_label, parse_state_list, DiracState, QuantumState, ORBITAL_LETTERS};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::constants::{Constants, DerivedMasses, MassChoice};
use crate::error::{Error, Result};

/// Level models known to the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Schrodinger,
    Sommerfeld,
    #[serde(rename = "kg")]
    KleinGordon,
    #[serde(rename = "scalar")]
    ScalarCoulomb,
    #[serde(rename = "ss")]
    Salpeter,
    #[serde(rename = "qc")]
    Quasiclassical,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Schrodinger,
        Model::Sommerfeld,
        Model::KleinGordon,
        Model::ScalarCoulomb,
        Model::Salpeter,
        Model::Quasiclassical,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            Model::Schrodinger => "schrodinger",
            Model::Sommerfeld => "sommerfeld",
            Model::KleinGordon => "kg",
            Model::ScalarCoulomb => "scalar",
            Model::Salpeter => "ss",
            Model::Quasiclassical => "qc",
        }
    }

    /// Column tag used in table headers.
    pub fn tag(&self) -> &'static str {
        match self {
            Model::Schrodinger => "SCH",
            Model::Sommerfeld => "SOM",
            Model::KleinGordon => "KG",
            Model::ScalarCoulomb => "SC",
            Model::Salpeter => "SS",
            Model::Quasiclassical => "QC",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "schrodinger" | "schroedinger" | "nr" => Ok(Model::Schrodinger),
            "sommerfeld" | "dirac" => Ok(Model::Sommerfeld),
            "kg" | "klein-gordon" => Ok(Model::KleinGordon),
            "scalar" | "scalar-coulomb" => Ok(Model::ScalarCoulomb),
            "ss" | "salpeter" => Ok(Model::Salpeter),
            "qc" | "quasiclassical" => Ok(Model::Quasiclassical),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

/// The state a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LevelState {
    Principal(u32),
    Orbital(QuantumState),
    Dirac(DiracState),
}

impl fmt::Display for LevelState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelState::Principal(n) => write!(f, "N={n}"),
            LevelState::Orbital(s) => write!(f, "{s}"),
            LevelState::Dirac(s) => write!(f, "{s}"),
        }
    }
}

/// A binding energy in eV (negative for bound states).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub value: f64,
    pub model: Model,
    pub state: LevelState,
}

/// m·[(1 + x)^(−1/2) − 1] = −m·x / (√(1+x)·(1 + √(1+x))).
fn inverse_sqrt_minus_one(m: f64, x: f64) -> f64 {
    let root = (1.0 + x).sqrt();
    -m * x / (root * (1.0 + root))
}

/// Vector-Coulomb level for radial number `n_radial = n − κ`, κ = j+1/2 or l+1/2.
fn vector_coulomb(m: f64, n_radial: f64, kappa: f64, z: u32, alpha: f64) -> Result<f64> {
    let za = z as f64 * alpha;
    if za >= kappa {
        return Err(Error::SupercriticalCharge {
            z,
            z_alpha: za,
            limit: kappa,
        });
    }
    let lambda = ((kappa - za) * (kappa + za)).sqrt();
    let ratio = za / (n_radial + lambda);
    Ok(inverse_sqrt_minus_one(m, ratio * ratio))
}

/// −m α² / (2N²) in eV.
pub fn schrodinger_level(n: u32, c: &Constants, choice: MassChoice) -> Result<EnergyLevel> {
    schrodinger_level_z(n, 1, c, choice)
}

pub fn schrodinger_level_z(n: u32, z: u32, c: &Constants, choice: MassChoice) -> Result<EnergyLevel> {
    if n == 0 {
        return Err(Error::domain("schrodinger_level", "N must be ≥ 1"));
    }
    let za = z as f64 * c.alpha;
    let nf = n as f64;
    Ok(EnergyLevel {
        value: -0.5 * c.mass(choice) * za * za / (nf * nf) * c.ev_per_mev,
        model: Model::Schrodinger,
        state: LevelState::Principal(n),
    })
}

/// Sommerfeld fine-structure level minus the electron rest mass.
pub fn sommerfeld_level(s: DiracState, z: u32, c: &Constants) -> Result<EnergyLevel> {
    let kappa = s.kappa() as f64;
    let t = vector_coulomb(c.m_e, s.n() as f64 - kappa, kappa, z, c.alpha)?;
    Ok(EnergyLevel {
        value: t * c.ev_per_mev,
        model: Model::Sommerfeld,
        state: LevelState::Dirac(s),
    })
}

/// Static Klein–Gordon level with the bare electron mass.
pub fn kg_level(s: QuantumState, z: u32, c: &Constants) -> Result<EnergyLevel> {
    let kappa = s.l as f64 + 0.5;
    let t = vector_coulomb(c.m_e, s.k as f64 + 0.5, kappa, z, c.alpha)?;
    Ok(EnergyLevel {
        value: t * c.ev_per_mev,
        model: Model::KleinGordon,
        state: LevelState::Orbital(s),
    })
}

/// Level for a Lorentz-scalar Coulomb potential: m[√(1 − y²) − 1].
pub fn scalar_coulomb_level(s: QuantumState, z: u32, c: &Constants, choice: MassChoice) -> Result<EnergyLevel> {
    let za = z as f64 * c.alpha;
    let kappa = s.l as f64 + 0.5;
    let lambda = kappa.hypot(za);
    let y = za / (s.k as f64 + 0.5 + lambda);
    if y >= 1.0 {
        return Err(Error::domain("scalar_coulomb_level", format!("y = {y} ≥ 1")));
    }
    let m = c.mass(choice);
    let t = -m * y * y / (1.0 + (1.0 - y * y).sqrt());
    Ok(EnergyLevel {
        value: t * c.ev_per_mev,
        model: Model::ScalarCoulomb,
        state: LevelState::Orbital(s),
    })
}

fn qc_terms(s: QuantumState, d: &DerivedMasses, c: &Constants) -> QcTerms {
    QcTerms::new(s.qc_principal(), c.alpha, d).expect("qc principal number is at least 1")
}

/// Both roots of the squared-mass quadratic (MeV²).
pub fn qc_squared_mass(s: QuantumState, d: &DerivedMasses, c: &Constants) -> SquaredMassRoots {
    qc_terms(s, d, c).roots(d)
}

/// Atom-branch complex eigenmass.
pub fn qc_complex_mass(s: QuantumState, d: &DerivedMasses, c: &Constants) -> ComplexMass {
    qc_terms(s, d, c).complex_mass()
}

/// T = |M^Re| − m_p − m_e in eV.
pub fn qc_level(s: QuantumState, d: &DerivedMasses, c: &Constants) -> EnergyLevel {
    EnergyLevel {
        value: qc_terms(s, d, c).kinetic_energy(d) * c.ev_per_mev,
        model: Model::Quasiclassical,
        state: LevelState::Orbital(s),
    }
}

/// Total width Γ = 2|M^Im| in MeV.
pub fn qc_width(s: QuantumState, d: &DerivedMasses, c: &Constants) -> f64 {
    qc_complex_mass(s, d, c).width()
}

/// Which bound-state condition to probe in [`critical_z`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalModel {
    /// Sommerfeld with j given doubled (1 → j = 1/2).
    Sommerfeld {
        twice_j: u32,
    },
    KleinGordon {
        l: u32,
    },
}

/// Largest integer Z with Zα below the bound-state limit.
///
/// For the Klein–Gordon P wave this gives 205; the sometimes quoted 82 does
/// not follow from Zα < l + 1/2.
pub fn critical_z(model: CriticalModel, c: &Constants) -> u32 {
    let limit = match model {
        CriticalModel::Sommerfeld { twice_j } => (twice_j as f64 + 1.0) / 2.0,
        CriticalModel::KleinGordon { l } => l as f64 + 0.5,
    };
    let mut z = (limit / c.alpha).floor() as u32;
    while z > 0 && z as f64 * c.alpha >= limit {
        z -= 1;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{default_constants, derive};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c() -> Constants {
        default_constants()
    }

    #[test]
    fn schrodinger_values() {
        let c = c();
        let e1 = schrodinger_level(1, &c, MassChoice::Electron).unwrap().value;
        assert!((e1 + 13.605693).abs() < 1e-5);
        let e2 = schrodinger_level(2, &c, MassChoice::Electron).unwrap().value;
        assert_eq!(e2, e1 / 4.0);
        let far = schrodinger_level(1_000_000, &c, MassChoice::Electron).unwrap().value;
        assert!(far.abs() < 1e-10);
        assert!(schrodinger_level(0, &c, MassChoice::Electron).is_err());
    }

    #[test]
    fn sommerfeld_ground_state_collapses() {
        let c = c();
        let s = DiracState::new(1, 1).unwrap();
        let t = sommerfeld_level(s, 1, &c).unwrap().value;
        let collapsed = -c.m_e * c.alpha * c.alpha / (1.0 + (1.0 - c.alpha * c.alpha).sqrt()) * 1e6;
        assert_relative_eq!(t, collapsed, max_relative = 1e-14);
        // −13.605874 eV with CODATA-2014 constants.
        assert!((t + 13.605874).abs() < 2e-6, "{t}");
    }

    #[test]
    fn sommerfeld_supercritical() {
        let s = DiracState::new(1, 1).unwrap();
        match sommerfeld_level(s, 138, &c()) {
            Err(Error::SupercriticalCharge { z, .. }) => assert_eq!(z, 138),
            other => panic!("{other:?}"),
        }
        assert!(sommerfeld_level(s, 137, &c()).is_ok());
    }

    #[test]
    fn kg_table_values() {
        let c = c();
        let one_s = kg_level(QuantumState::new(0, 0), 1, &c).unwrap().value;
        assert!((one_s + 13.60659871).abs() < 5e-5);
        let one_p = kg_level(QuantumState::new(0, 1), 1, &c).unwrap().value;
        assert!((one_p + 3.40144965).abs() < 5e-5);
        assert!(matches!(
            kg_level(QuantumState::new(0, 0), 69, &c),
            Err(Error::SupercriticalCharge { .. })
        ));
    }

    #[test]
    fn scalar_coulomb_values() {
        let c = c();
        let one_s = scalar_coulomb_level(QuantumState::new(0, 0), 1, &c, MassChoice::Electron)
            .unwrap()
            .value;
        assert!((one_s + 13.6044253).abs() < 1e-6, "{one_s}");
        assert!((one_s + 13.60423).abs() < 2e-4);
        let free = scalar_coulomb_level(QuantumState::new(0, 0), 0, &c, MassChoice::Electron).unwrap();
        assert_eq!(free.value, 0.0);
        // λ' stays real for any charge.
        for z in [1, 100, 1000, 100_000] {
            assert!(scalar_coulomb_level(QuantumState::new(0, 0), z, &c, MassChoice::Electron).is_ok());
        }
    }

    #[test]
    fn stable_form_identity() {
        let x = 0.25;
        let direct = (1.0f64 + x).powf(-0.5) - 1.0;
        assert_relative_eq!(inverse_sqrt_minus_one(1.0, x), direct, max_relative = 1e-15);
    }

    #[test]
    fn qc_table_values() {
        let c = c();
        let d = derive(&c);
        let one_s = qc_level(QuantumState::new(0, 0), &d, &c).value;
        assert!((one_s + 13.59810653).abs() < 5e-5);
        let one_p = qc_level(QuantumState::new(0, 1), &d, &c).value;
        let two_s = qc_level(QuantumState::new(1, 0), &d, &c).value;
        assert_eq!(one_p, two_s);
        assert!((one_p + 3.39956046).abs() < 5e-5);

        let m = qc_complex_mass(QuantumState::new(0, 0), &d, &c);
        assert!((m.im - 3.421587).abs() < 5e-6);
        let m1p = qc_complex_mass(QuantumState::new(0, 1), &d, &c);
        assert!((m1p.im - 1.710793).abs() < 5e-6);
        assert_relative_eq!(m1p.im, m.im / 2.0, max_relative = 1e-6);
    }

    #[test]
    fn qc_widths() {
        let c = c();
        let d = derive(&c);
        let g = qc_width(QuantumState::new(0, 0), &d, &c);
        assert!((g - 6.843174).abs() < 1e-5);
        let product = g * 1.0;
        for l in 1..5 {
            let gl = qc_width(QuantumState::new(0, l), &d, &c);
            assert_relative_eq!(gl * (l + 1) as f64, product, max_relative = 1e-6);
        }
        let eq = Constants { m_p: c.m_e, ..c };
        assert_eq!(qc_width(QuantumState::new(0, 0), &derive(&eq), &eq), 0.0);
    }

    #[test]
    fn qc_nonrelativistic_limit() {
        let c = Constants {
            alpha: 1e-4,
            ..default_constants()
        };
        let d = derive(&c);
        for n in 1..4u32 {
            let t = qc_level(QuantumState::new(n - 1, 0), &d, &c).value;
            let nr = -d.mu * c.alpha * c.alpha / (2.0 * (n * n) as f64) * 1e6;
            assert!((t / nr - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn critical_charges() {
        let c = c();
        assert_eq!(critical_z(CriticalModel::Sommerfeld { twice_j: 1 }, &c), 137);
        assert_eq!(critical_z(CriticalModel::Sommerfeld { twice_j: 3 }, &c), 274);
        assert_eq!(critical_z(CriticalModel::KleinGordon { l: 0 }, &c), 68);
        assert_eq!(critical_z(CriticalModel::KleinGordon { l: 1 }, &c), 205);
    }

    #[test]
    fn critical_z_is_the_boundary() {
        let c = c();
        let z = critical_z(CriticalModel::KleinGordon { l: 0 }, &c);
        assert!(kg_level(QuantumState::new(0, 0), z, &c).is_ok());
        assert!(kg_level(QuantumState::new(0, 0), z + 1, &c).is_err());
    }

    #[test]
    fn model_names() {
        for m in Model::ALL {
            assert_eq!(m.key().parse::<Model>().unwrap(), m);
        }
        assert!("dirac-coulomb".parse::<Model>().is_err());
    }

    #[test]
    fn all_levels_negative_and_monotone() {
        let c = c();
        let d = derive(&c);
        for l in 0..3u32 {
            let mut prev = f64::NEG_INFINITY;
            for k in 0..8u32 {
                let s = QuantumState::new(k, l);
                let values = [
                    kg_level(s, 1, &c).unwrap().value,
                    scalar_coulomb_level(s, 1, &c, MassChoice::Electron).unwrap().value,
                    qc_level(s, &d, &c).value,
                ];
                for v in values {
                    assert!(v < 0.0);
                }
                assert!(values[2] > prev);
                prev = values[2];
            }
        }
    }

    proptest! {
        #[test]
        fn qc_degenerate_in_principal_number(n in 1u32..=6) {
            let c = c();
            let d = derive(&c);
            let reference = qc_level(QuantumState::new(n - 1, 0), &d, &c).value;
            for l in 0..n {
                let v = qc_level(QuantumState::new(n - 1 - l, l), &d, &c).value;
                prop_assert!(((v - reference) / reference).abs() <= 1e-14);
            }
        }

        #[test]
        fn levels_increase_with_n(n in 1u32..30) {
            let c = c();
            let d = derive(&c);
            let a = QuantumState::new(n - 1, 0);
            let b = QuantumState::new(n, 0);
            prop_assert!(kg_level(a, 1, &c).unwrap().value < kg_level(b, 1, &c).unwrap().value);
            prop_assert!(qc_level(a, &d, &c).value < qc_level(b, &d, &c).value);
            let sa = scalar_coulomb_level(a, 1, &c, MassChoice::Reduced).unwrap().value;
            let sb = scalar_coulomb_level(b, 1, &c, MassChoice::Reduced).unwrap().value;
            prop_assert!(sa < sb && sb < 0.0);
            let na = schrodinger_level(n, &c, MassChoice::Reduced).unwrap().value;
            let nb = schrodinger_level(n + 1, &c, MassChoice::Reduced).unwrap().value;
            prop_assert!(na < nb && nb < 0.0);
        }

        #[test]
        fn complex_mass_identities(n in 1u32..=20) {
            let c = c();
            let d = derive(&c);
            let t = QcTerms::new(n as f64, c.alpha, &d).unwrap();
            let m = t.complex_mass();
            prop_assert!(((m.re * m.im) / (2.0 * t.b) - 1.0).abs() <= 1e-10);
            prop_assert!(((m.re * m.re + m.im * m.im) / (4.0 * t.modulus) - 1.0).abs() <= 1e-10);
            prop_assert!(m.re >= 0.0 && m.im >= 0.0);
        }
    }
}
