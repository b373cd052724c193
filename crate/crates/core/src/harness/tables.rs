//! Live regeneration of the level table and the relative-error table.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::constants::{Constants, MassChoice};
use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::salpeter::{solve_levels, SolverConfig};
use crate::spectra::{
    kg_level, qc_complex_mass, qc_level, scalar_coulomb_level, schrodinger_level_z, sommerfeld_level, DiracState,
    Model, QuantumState,
};
use crate::verifier::QcEnvironment;

use super::published::{published_epsilon, published_m_im};
use super::reference::{builtin_reference, ReferenceDataset, TABLE_STATES};

/// Relative agreement required for a MATCH flag.
pub const MATCH_TOLERANCE: f64 = 0.02;

/// Models of the standard comparison, in column order.
pub const TABLE_MODELS: [Model; 3] = [Model::KleinGordon, Model::Salpeter, Model::Quasiclassical];

/// Everything a level computation depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    pub constants: Constants,
    pub params: PotentialParams,
    pub solver: SolverConfig,
    /// Mass used by the Schrödinger and scalar-Coulomb formulas.
    pub mass_choice: MassChoice,
}

impl Default for Environment {
    fn default() -> Self {
        let constants = Constants::default();
        Self {
            constants,
            params: PotentialParams::from_constants(&constants),
            solver: SolverConfig::default(),
            mass_choice: MassChoice::Electron,
        }
    }
}

impl Environment {
    pub fn z(&self) -> u32 {
        self.params.z
    }

    pub fn qc(&self) -> QcEnvironment {
        QcEnvironment::new(self.constants, self.params)
    }

    fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            z: self.params.z,
            ..self.solver
        }
    }
}

/// |(T_model − T_ref)/T_ref|·100.
pub fn relative_error(t_model: f64, t_ref: f64) -> Result<f64> {
    if t_ref == 0.0 || !t_ref.is_finite() {
        return Err(Error::domain("relative_error", format!("reference value {t_ref}")));
    }
    Ok(((t_model - t_ref) / t_ref).abs() * 100.0)
}

/// Binding energy (eV) of `state` in `model`.
pub fn model_level(model: Model, state: QuantumState, env: &Environment) -> Result<f64> {
    let c = &env.constants;
    let z = env.z();
    let value = match model {
        Model::Schrodinger => schrodinger_level_z(state.n_principal(), z, c, env.mass_choice)?.value,
        Model::Sommerfeld => {
            let dirac = DiracState::new(state.n_principal(), 2 * state.l + 1)?;
            sommerfeld_level(dirac, z, c)?.value
        }
        Model::KleinGordon => kg_level(state, z, c)?.value,
        Model::ScalarCoulomb => scalar_coulomb_level(state, z, c, env.mass_choice)?.value,
        Model::Salpeter => return salpeter_column(&[state], env).remove(&state).expect("state requested"),
        Model::Quasiclassical => qc_level(state, &c.derive(), c).value,
    };
    Ok(value)
}

/// Salpeter levels for several states, one solve per orbital number.
fn salpeter_column(states: &[QuantumState], env: &Environment) -> BTreeMap<QuantumState, Result<f64>> {
    let mut by_l: BTreeMap<u32, u32> = BTreeMap::new();
    for s in states {
        let top = by_l.entry(s.l).or_insert(0);
        *top = (*top).max(s.k);
    }
    let mut out = BTreeMap::new();
    for (l, k_max) in by_l {
        let count = k_max as usize + 1;
        let mut cfg = env.solver_config();
        cfg.basis_size = cfg.basis_size.max(2 * count);
        let solved = solve_levels(l, count, &cfg, &env.constants);
        for s in states.iter().filter(|s| s.l == l) {
            let cell = match &solved {
                Ok(levels) => Ok(levels[s.k as usize].binding_ev),
                Err(e) => Err(e.clone()),
            };
            out.insert(*s, cell);
        }
    }
    out
}

/// One computed value, or the reason it is missing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Cell {
    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) => Self::value(v),
            Err(e) => Self {
                value: None,
                error: Some(e.to_string()),
            },
        }
    }

    pub fn value(v: f64) -> Self {
        Self {
            value: Some(v),
            error: None,
        }
    }

    pub fn unavailable() -> Self {
        Self {
            value: None,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub state: QuantumState,
    pub label: String,
    pub reference: Option<f64>,
    /// One cell per model, in [`Table1::models`] order.
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1 {
    pub models: Vec<Model>,
    pub reference_source: String,
    pub rows: Vec<Table1Row>,
}

impl Table1 {
    pub fn value(&self, state: QuantumState, model: Model) -> Option<f64> {
        let col = self.models.iter().position(|&m| m == model)?;
        self.rows.iter().find(|r| r.state == state)?.cells[col].value
    }

    pub fn column(&self, model: Model) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| self.value(r.state, model)).collect()
    }
}

/// Computes every (state, model) cell; failures mark the cell, not the table.
pub fn generate_table1(
    models: &[Model],
    states: &[QuantumState],
    env: &Environment,
    reference: &ReferenceDataset,
) -> Table1 {
    let ss = if models.contains(&Model::Salpeter) {
        salpeter_column(states, env)
    } else {
        BTreeMap::new()
    };
    let rows = states
        .iter()
        .map(|&state| {
            let cells = models
                .iter()
                .map(|&model| match model {
                    Model::Salpeter => Cell::from_result(ss[&state].clone()),
                    _ => Cell::from_result(model_level(model, state, env)),
                })
                .collect();
            Table1Row {
                state,
                label: state.label(),
                reference: reference.get(state),
                cells,
            }
        })
        .collect();
    Table1 {
        models: models.to_vec(),
        reference_source: reference.source.clone(),
        rows,
    }
}

/// The standard ten-state, three-model table against the built-in reference.
pub fn standard_table1(env: &Environment) -> Table1 {
    generate_table1(&TABLE_MODELS, &TABLE_STATES, env, &builtin_reference())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Flag {
    Match,
    Mismatch,
    /// No computed value or no published value to compare with.
    Unavailable,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Match => "MATCH",
            Flag::Mismatch => "MISMATCH",
            Flag::Unavailable => "NA",
        }
    }
}

/// A computed number next to its published counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Compared {
    pub value: Option<f64>,
    pub published: Option<f64>,
    pub flag: Flag,
}

impl Compared {
    pub fn new(value: Option<f64>, published: Option<f64>) -> Self {
        let flag = match (value, published) {
            (Some(v), Some(p)) if (v - p).abs() <= MATCH_TOLERANCE * p.abs() => Flag::Match,
            (Some(_), Some(_)) => Flag::Mismatch,
            _ => Flag::Unavailable,
        };
        Self { value, published, flag }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub state: QuantumState,
    pub label: String,
    pub reference: Option<f64>,
    /// Binding energies (eV) per model.
    pub energies: Vec<Option<f64>>,
    /// Relative errors (%) per model.
    pub epsilon: Vec<Compared>,
    /// Imaginary eigenmass (MeV).
    pub m_im: Compared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table2 {
    pub models: Vec<Model>,
    pub rows: Vec<ComparisonRow>,
}

/// A flagged disagreement with a published number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub state: String,
    pub column: String,
    pub computed: f64,
    pub published: f64,
}

impl Table2 {
    pub fn row(&self, state: QuantumState) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.state == state)
    }

    pub fn epsilon(&self, state: QuantumState, model: Model) -> Option<&Compared> {
        let col = self.models.iter().position(|&m| m == model)?;
        Some(&self.row(state)?.epsilon[col])
    }

    pub fn mismatches(&self) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for row in &self.rows {
            let cols = self
                .models
                .iter()
                .map(|m| format!("eps_{}", m.tag()))
                .zip(&row.epsilon)
                .chain(std::iter::once(("M_im".to_string(), &row.m_im)));
            for (column, cmp) in cols {
                if let (Flag::Mismatch, Some(computed), Some(published)) = (cmp.flag, cmp.value, cmp.published) {
                    out.push(Mismatch {
                        state: row.label.clone(),
                        column,
                        computed,
                        published,
                    });
                }
            }
        }
        out
    }
}

/// Recomputes ε from `table` and the QC imaginary masses, then flags each cell.
pub fn compare_table2(table: &Table1, c: &Constants) -> Table2 {
    let d = c.derive();
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let energies: Vec<Option<f64>> = row.cells.iter().map(|cell| cell.value).collect();
            let epsilon = table
                .models
                .iter()
                .zip(&energies)
                .map(|(&model, value)| {
                    let eps = match (value, row.reference) {
                        (Some(v), Some(r)) => relative_error(*v, r).ok(),
                        _ => None,
                    };
                    Compared::new(eps, published_epsilon(row.state, model))
                })
                .collect();
            let m_im = Compared::new(Some(qc_complex_mass(row.state, &d, c).im), published_m_im(row.state));
            ComparisonRow {
                state: row.state,
                label: row.label.clone(),
                reference: row.reference,
                energies,
                epsilon,
                m_im,
            }
        })
        .collect();
    Table2 {
        models: table.models.clone(),
        rows,
    }
}

/// Standard relative-error table built from a fresh [`standard_table1`].
pub fn generate_table2(env: &Environment) -> Table2 {
    compare_table2(&standard_table1(env), &env.constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn fast_env() -> Environment {
        Environment {
            solver: SolverConfig {
                basis_size: 16,
                tolerance_ev: 1.0,
                ..SolverConfig::default()
            },
            ..Environment::default()
        }
    }

    #[test]
    fn relative_error_formula() {
        assert_eq!(relative_error(-13.6, -13.6).unwrap(), 0.0);
        assert_relative_eq!(relative_error(-1.01, -1.0).unwrap(), 1.0, max_relative = 1e-12);
        assert!(relative_error(1.0, 0.0).is_err());
    }

    #[test]
    fn qc_vs_nist_examples() {
        let env = Environment::default();
        let r = builtin_reference();
        let eps = |s: QuantumState| {
            relative_error(model_level(Model::Quasiclassical, s, &env).unwrap(), r.get(s).unwrap()).unwrap()
        };
        assert!((eps(QuantumState::new(0, 0)) / 2.41e-3 - 1.0).abs() < 0.02);
        // Published as 1.87e-4; the formula gives ten times that.
        assert!((eps(QuantumState::new(1, 0)) / 1.87e-3 - 1.0).abs() < 0.02);
    }

    #[test]
    fn empty_state_list() {
        let t = generate_table1(&TABLE_MODELS, &[], &fast_env(), &builtin_reference());
        assert!(t.rows.is_empty());
    }

    #[test]
    fn qc_column_degenerate_in_principal_number() {
        let t = generate_table1(
            &[Model::Quasiclassical],
            &TABLE_STATES,
            &fast_env(),
            &builtin_reference(),
        );
        let v = |k, l| t.value(QuantumState::new(k, l), Model::Quasiclassical).unwrap();
        assert_eq!(v(0, 1), v(1, 0));
        assert_eq!(v(0, 2), v(1, 1));
        assert_eq!(v(1, 1), v(2, 0));
    }

    #[test]
    fn errors_mark_cells_without_aborting() {
        let mut env = fast_env();
        env.params.z = 200;
        let t = generate_table1(
            &[Model::Sommerfeld, Model::Quasiclassical],
            &[QuantumState::new(0, 0)],
            &env,
            &builtin_reference(),
        );
        assert!(t.rows[0].cells[0].value.is_none());
        assert!(t.rows[0].cells[0].error.as_deref().unwrap().contains("supercritical"));
        assert!(t.rows[0].cells[1].value.is_some());
    }

    #[test]
    fn table2_flags() {
        let t2 = generate_table2(&fast_env());
        let s1 = QuantumState::new(0, 0);
        let qc = t2.epsilon(s1, Model::Quasiclassical).unwrap();
        assert_eq!(qc.flag, Flag::Match);
        let row = t2.row(s1).unwrap();
        assert!((row.m_im.value.unwrap() - 3.421587).abs() < 5e-6);
        assert_eq!(row.m_im.flag, Flag::Match);
        let two_p = t2.epsilon(QuantumState::new(1, 1), Model::Quasiclassical).unwrap();
        assert_eq!(two_p.flag, Flag::Mismatch);
        assert!((two_p.value.unwrap() / 8.89e-4 - 1.0).abs() < 0.02);
        assert!(t2.mismatches().iter().any(|m| m.state == "2P" && m.column == "eps_QC"));
        let g = t2.row(QuantumState::new(0, 4)).unwrap().m_im.value.unwrap();
        assert_relative_eq!(g, row.m_im.value.unwrap() / 5.0, max_relative = 1e-6);
    }

    #[test]
    fn epsilon_never_negative() {
        let t2 = generate_table2(&fast_env());
        for row in &t2.rows {
            for e in &row.epsilon {
                assert!(e.value.is_none_or(|v| v >= 0.0));
            }
        }
    }

    proptest! {
        #[test]
        fn epsilon_is_scale_invariant(t in -100.0f64..-0.01, r in -100.0f64..-0.01, k in 1e-3f64..1e3) {
            let a = relative_error(t, r).unwrap();
            let b = relative_error(t * k, r * k).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-300) + 1e-15);
        }
    }
}
