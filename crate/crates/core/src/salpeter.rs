//! Variational solver for the spinless Salpeter equation with a Coulomb
//! potential,
//!
//! ```text
//! [√(p² + m_e²) + √(p² + m_p²) − Zα/r] ψ = M ψ.
//! ```
//!
//! The radial basis is the normalized Coulomb–Sturmian set
//! r^l e^{−βr} L_k^{(2l+1)}(2βr), β = 1/scale. Overlap and Coulomb matrices
//! are known in closed form; the kinetic matrix is a one-dimensional
//! momentum integral, done by Gauss–Legendre on q = tan(θ/2).
//!
//! The kinetic matrix holds √(p²+m²) − m for each particle. The rest mass
//! m_+ is kept apart so the eigenvalues are binding energies directly.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::spectra::{EnergyLevel, LevelState, Model, QuantumState};

/// Overlap condition numbers above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;
/// Momentum nodes used when none are configured: max(this, 4·basis_size).
pub const DEFAULT_MIN_QUAD_NODES: usize = 512;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Scale bracket searched around n·scale, as multiplicative factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleSearch {
    pub lower: f64,
    pub upper: f64,
    /// Stop when the bracket is narrower than this in ln(scale).
    pub log_tolerance: f64,
}

impl Default for ScaleSearch {
    fn default() -> Self {
        Self {
            lower: 0.25,
            upper: 4.0,
            log_tolerance: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub basis_size: usize,
    /// Basis length scale (1/MeV). `None` means the Bohr radius 1/(μα).
    pub scale: Option<f64>,
    /// Momentum quadrature order. `None` picks max(512, 4·basis_size).
    pub quad_nodes: Option<usize>,
    pub scale_search: Option<ScaleSearch>,
    /// Allowed shift (eV) of a level when the basis doubles.
    pub tolerance_ev: f64,
    /// Nuclear charge multiplying the Coulomb term.
    pub z: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            basis_size: 64,
            scale: None,
            quad_nodes: None,
            scale_search: Some(ScaleSearch::default()),
            tolerance_ev: 1e-4,
            z: 1,
        }
    }
}

impl SolverConfig {
    pub fn fixed_scale(basis_size: usize, scale: Option<f64>) -> Self {
        Self {
            basis_size,
            scale,
            scale_search: None,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.basis_size < 4 {
            return Err(Error::InvalidParameter(format!(
                "basis_size must be ≥ 4, got {}",
                self.basis_size
            )));
        }
        if let Some(scale) = self.scale {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
            }
        }
        if let Some(n) = self.quad_nodes {
            if n < 2 * self.basis_size {
                return Err(Error::InvalidParameter(format!(
                    "quad_nodes = {n} must be ≥ 2·basis_size = {}",
                    2 * self.basis_size
                )));
            }
        }
        if let Some(s) = self.scale_search {
            if !(s.lower > 0.0 && s.upper > s.lower && s.log_tolerance > 0.0) {
                return Err(Error::InvalidParameter(format!("bad scale bracket {s:?}")));
            }
        }
        if !(self.tolerance_ev > 0.0) {
            return Err(Error::InvalidParameter("tolerance_ev must be positive".into()));
        }
        if self.z == 0 {
            return Err(Error::InvalidParameter("nuclear charge must be ≥ 1".into()));
        }
        Ok(())
    }

    pub fn nodes(&self) -> usize {
        self.quad_nodes
            .unwrap_or_else(|| DEFAULT_MIN_QUAD_NODES.max(4 * self.basis_size))
    }

    /// Same configuration with twice the basis (and nodes, when fixed).
    pub fn doubled(&self) -> Self {
        Self {
            basis_size: 2 * self.basis_size,
            quad_nodes: self.quad_nodes.map(|n| 2 * n),
            ..*self
        }
    }
}

/// Bohr radius 1/(μα) in 1/MeV.
pub fn default_scale(c: &Constants) -> f64 {
    1.0 / (c.derive().mu * c.alpha)
}

fn check_constants(c: &Constants) -> Result<()> {
    let masses_ok = [c.m_e, c.m_p].iter().all(|m| m.is_finite() && *m > 0.0);
    if !masses_ok || !(c.alpha.is_finite() && c.alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "solver needs positive masses and α ≥ 0 (α = {}, m_e = {}, m_p = {})",
            c.alpha, c.m_e, c.m_p
        )));
    }
    Ok(())
}

/// Hamiltonian pieces in the normalized Sturmian basis (MeV).
#[derive(Debug, Clone, PartialEq)]
pub struct SSOperatorMatrices {
    /// Σ_i (√(p²+m_i²) − m_i)
    pub kinetic: DMatrix<f64>,
    /// −Zα/r
    pub potential: DMatrix<f64>,
    pub overlap: DMatrix<f64>,
    /// m_p + m_e
    pub rest_mass: f64,
    pub scale: f64,
    pub l: u32,
}

impl SSOperatorMatrices {
    pub fn hamiltonian(&self) -> DMatrix<f64> {
        &self.kinetic + &self.potential
    }

    /// Full operator including the rest mass, in MeV.
    pub fn hamiltonian_with_rest_mass(&self) -> DMatrix<f64> {
        self.hamiltonian() + &self.overlap * self.rest_mass
    }

    /// Generalized eigenvalues of (H, S) in MeV, ascending, without rest mass.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        generalized_eigenvalues(&self.hamiltonian(), &self.overlap)
    }
}

/// Sorted eigenvalues of H x = λ S x for symmetric H and positive-definite S.
pub fn generalized_eigenvalues(h: &DMatrix<f64>, s: &DMatrix<f64>) -> Result<Vec<f64>> {
    let chol = Cholesky::new(s.clone()).ok_or(Error::IllConditionedBasis {
        condition: f64::INFINITY,
        limit: MAX_CONDITION,
    })?;
    let l = chol.l();
    let linv = l.clone().try_inverse().ok_or(Error::IllConditionedBasis {
        condition: f64::INFINITY,
        limit: MAX_CONDITION,
    })?;
    let mut a = &linv * h * linv.transpose();
    a = (&a + a.transpose()) * 0.5;
    let mut values: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// λ_max/λ_min of a symmetric positive matrix.
pub fn condition_number(s: &DMatrix<f64>) -> f64 {
    let eig = SymmetricEigen::new(s.clone()).eigenvalues;
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Normalized overlap: tridiagonal, scale independent.
fn overlap_matrix(n: usize, l: u32) -> DMatrix<f64> {
    let a = 2.0 * l as f64 + 1.0;
    let mut s = DMatrix::identity(n, n);
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        let off = -((kf + 1.0) * (kf + a + 1.0) / ((2.0 * kf + a + 1.0) * (2.0 * kf + a + 3.0))).sqrt();
        s[(k, k + 1)] = off;
        s[(k + 1, k)] = off;
    }
    s
}

/// −Zα/r is diagonal: ⟨1/r⟩_k = β/(k + l + 1).
fn coulomb_matrix(n: usize, l: u32, beta: f64, z_alpha: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            -z_alpha * beta / (i as f64 + l as f64 + 1.0)
        } else {
            0.0
        }
    })
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

/// Normalized momentum-space basis functions at dimensionless q (β = 1),
/// written into `out[0..n]`.
fn momentum_functions(q: f64, l: u32, out: &mut [f64]) {
    let lam = l as f64 + 1.0;
    let q2 = q * q;
    let x = (q2 - 1.0) / (q2 + 1.0);
    // √(2/π)·2^{2l+2}·l!·q^l/(1+q²)^{l+2}/√((2l+1)!), in logs for large l.
    let ln_prefactor = 0.5 * (2.0 / PI).ln() + (2 * l + 2) as f64 * std::f64::consts::LN_2 + ln_factorial(l)
        - 0.5 * ln_factorial(2 * l + 1)
        - (l as f64 + 2.0) * (1.0 + q2).ln();
    let envelope = ln_prefactor.exp() * q.powi(l as i32);

    // Ĉ_k recurrence normalized so that Ĉ_0 = 1 after pulling 1/√((2l+1)!) out.
    let (mut prev, mut cur) = (0.0, 1.0);
    for (k, slot) in out.iter_mut().enumerate() {
        let kf = k as f64;
        *slot = envelope * (kf + lam).sqrt() * cur;
        let next = (2.0 * (kf + lam) * x * cur - (kf * (kf + 2.0 * lam - 1.0)).sqrt() * prev)
            / ((kf + 1.0) * (kf + 2.0 * lam)).sqrt();
        prev = cur;
        cur = next;
    }
}

/// √(p² + m²) − m without cancellation.
pub fn relativistic_kinetic(p: f64, m: f64) -> f64 {
    let p2 = p * p;
    p2 / ((p2 + m * m).sqrt() + m)
}

/// Σ_q w·q²·φ_j(q)φ_k(q)·t(βq) for a given dispersion t.
fn kinetic_matrix_with<T: Fn(f64) -> f64>(n: usize, l: u32, nodes: usize, t: T) -> DMatrix<f64> {
    let (x, w) = gauss_legendre(nodes);
    let mut k = DMatrix::zeros(n, n);
    let mut phi = vec![0.0; n];
    for (xi, wi) in x.iter().zip(&w) {
        // θ ∈ (0, π), q = tan(θ/2), dq = ½ sec²(θ/2) dθ
        let theta = 0.5 * PI * (xi + 1.0);
        let half = 0.5 * theta;
        let q = half.tan();
        let jac = 0.5 * PI * 0.5 / (half.cos() * half.cos());
        let weight = wi * jac * q * q * t(q);
        if weight == 0.0 || !weight.is_finite() {
            continue;
        }
        momentum_functions(q, l, &mut phi);
        for i in 0..n {
            let wi_phi = weight * phi[i];
            for j in 0..=i {
                k[(i, j)] += wi_phi * phi[j];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            k[(j, i)] = k[(i, j)];
        }
    }
    k
}

/// Kinetic matrix of one particle of mass `m`: √(p²+m²) − m.
pub fn single_mass_kinetic(n: usize, l: u32, scale: f64, nodes: usize, m: f64) -> DMatrix<f64> {
    let beta = 1.0 / scale;
    kinetic_matrix_with(n, l, nodes, |q| relativistic_kinetic(beta * q, m))
}

/// Overlap by momentum quadrature, for checking the closed forms.
pub fn overlap_by_quadrature(n: usize, l: u32, nodes: usize) -> DMatrix<f64> {
    kinetic_matrix_with(n, l, nodes, |_| 1.0)
}

pub fn build_matrices(l: u32, cfg: &SolverConfig, c: &Constants) -> Result<SSOperatorMatrices> {
    cfg.validate()?;
    check_constants(c)?;
    let scale = match cfg.scale {
        Some(s) => s,
        None if c.alpha > 0.0 => default_scale(c),
        None => {
            return Err(Error::InvalidParameter(
                "an explicit scale is required when α = 0".into(),
            ))
        }
    };
    build_at_scale(l, cfg, c, scale)
}

fn build_at_scale(l: u32, cfg: &SolverConfig, c: &Constants, scale: f64) -> Result<SSOperatorMatrices> {
    let n = cfg.basis_size;
    let beta = 1.0 / scale;
    let overlap = overlap_matrix(n, l);
    let condition = condition_number(&overlap);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditionedBasis {
            condition,
            limit: MAX_CONDITION,
        });
    }
    let (m_e, m_p) = (c.m_e, c.m_p);
    let kinetic = kinetic_matrix_with(n, l, cfg.nodes(), |q| {
        let p = beta * q;
        relativistic_kinetic(p, m_e) + relativistic_kinetic(p, m_p)
    });
    let potential = coulomb_matrix(n, l, beta, cfg.z as f64 * c.alpha);
    Ok(SSOperatorMatrices {
        kinetic,
        potential,
        overlap,
        rest_mass: m_e + m_p,
        scale,
        l,
    })
}

fn eigenvalues_at(l: u32, cfg: &SolverConfig, c: &Constants, scale: f64) -> Result<Vec<f64>> {
    build_at_scale(l, cfg, c, scale)?.eigenvalues()
}

/// Golden-section minimum of eigenvalue `index` over ln(scale).
fn search_scale(
    l: u32,
    index: usize,
    cfg: &SolverConfig,
    c: &Constants,
    centre: f64,
    s: ScaleSearch,
) -> Result<(f64, f64)> {
    let f = |ln_scale: f64| -> Result<f64> { Ok(eigenvalues_at(l, cfg, c, ln_scale.exp())?[index]) };
    let (mut a, mut b) = ((centre * s.lower).ln(), (centre * s.upper).ln());
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > s.log_tolerance {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1.exp(), f1) } else { (x2.exp(), f2) })
}

/// A converged level together with the scale it was found at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SalpeterLevel {
    pub state: QuantumState,
    /// Binding energy M − m_+ in eV.
    pub binding_ev: f64,
    pub scale: f64,
    /// Shift (eV) when the basis was doubled at the same scale.
    pub doubling_shift_ev: f64,
}

impl SalpeterLevel {
    pub fn energy_level(&self) -> EnergyLevel {
        EnergyLevel {
            value: self.binding_ev,
            model: Model::Salpeter,
            state: LevelState::Orbital(self.state),
        }
    }
}

/// Lowest `count` levels for orbital number `l`, with diagnostics.
pub fn solve_levels(l: u32, count: usize, cfg: &SolverConfig, c: &Constants) -> Result<Vec<SalpeterLevel>> {
    cfg.validate()?;
    check_constants(c)?;
    if count == 0 || count > cfg.basis_size / 2 {
        return Err(Error::InvalidParameter(format!(
            "count must be in 1..={} for basis_size {}",
            cfg.basis_size / 2,
            cfg.basis_size
        )));
    }
    let base = match cfg.scale {
        Some(s) => s,
        None if c.alpha > 0.0 => default_scale(c),
        None => {
            return Err(Error::InvalidParameter(
                "an explicit scale is required when α = 0".into(),
            ))
        }
    };
    let ev = c.ev_per_mev;
    let bigger = cfg.doubled();

    let fixed = if cfg.scale_search.is_none() {
        Some(eigenvalues_at(l, cfg, c, base)?)
    } else {
        None
    };
    let fixed_doubled = if fixed.is_some() {
        Some(eigenvalues_at(l, &bigger, c, base)?)
    } else {
        None
    };

    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let (scale, value, doubled) = match (cfg.scale_search, &fixed, &fixed_doubled) {
            (Some(search), _, _) => {
                let n_principal = (index as u32 + l + 1) as f64;
                let (scale, value) = search_scale(l, index, cfg, c, base * n_principal, search)?;
                let doubled = eigenvalues_at(l, &bigger, c, scale)?[index];
                (scale, value, doubled)
            }
            (None, Some(v), Some(vd)) => (base, v[index], vd[index]),
            _ => unreachable!("fixed eigenvalues are computed when the search is off"),
        };
        let delta_ev = (doubled - value) * ev;
        if delta_ev.abs() > cfg.tolerance_ev {
            return Err(Error::NoConvergence {
                level: index,
                basis_size: bigger.basis_size,
                delta_ev,
                tolerance_ev: cfg.tolerance_ev,
            });
        }
        out.push(SalpeterLevel {
            state: QuantumState::new(index as u32, l),
            binding_ev: value * ev,
            scale,
            doubling_shift_ev: delta_ev,
        });
    }
    Ok(out)
}

/// Lowest `count` binding energies (eV) for orbital number `l`.
pub fn lowest_levels(l: u32, count: usize, cfg: &SolverConfig, c: &Constants) -> Result<Vec<EnergyLevel>> {
    Ok(solve_levels(l, count, cfg, c)?
        .iter()
        .map(SalpeterLevel::energy_level)
        .collect())
}

/// Single level for a (k, l) state.
pub fn salpeter_level(state: QuantumState, cfg: &SolverConfig, c: &Constants) -> Result<EnergyLevel> {
    let count = state.k as usize + 1;
    let mut cfg = *cfg;
    cfg.basis_size = cfg.basis_size.max(2 * count);
    let levels = solve_levels(state.l, count, &cfg, c)?;
    Ok(levels[state.k as usize].energy_level())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub basis_size: usize,
    /// Binding energy in eV.
    pub value: f64,
    /// Change from the previous rung (eV); zero on the first.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub state: QuantumState,
    pub scale: f64,
    pub rows: Vec<ConvergenceRow>,
    /// |delta| does not shrink along the ladder (past the first change).
    pub non_monotone: bool,
    /// Some rung increased the level, breaking the variational bound.
    pub variational_violation: bool,
    /// The final value is not below threshold.
    pub unbound: bool,
}

impl ConvergenceReport {
    pub fn flagged(&self) -> bool {
        self.non_monotone || self.variational_violation || self.unbound
    }
}

/// Level `k` of orbital `l` on a ladder of basis sizes at fixed scale.
pub fn convergence_report(
    l: u32,
    k: u32,
    ladder: &[usize],
    cfg: &SolverConfig,
    c: &Constants,
) -> Result<ConvergenceReport> {
    if ladder.len() < 3 {
        return Err(Error::InvalidParameter("ladder needs at least 3 basis sizes".into()));
    }
    check_constants(c)?;
    let scale = match cfg.scale {
        Some(s) => s,
        None if c.alpha > 0.0 => default_scale(c) * (k + l + 1) as f64,
        None => {
            return Err(Error::InvalidParameter(
                "an explicit scale is required when α = 0".into(),
            ))
        }
    };
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ladder.len());
    for &size in ladder {
        let rung = SolverConfig {
            basis_size: size,
            scale: Some(scale),
            quad_nodes: cfg.quad_nodes.map(|n| n.max(2 * size)),
            scale_search: None,
            ..*cfg
        };
        rung.validate()?;
        if k as usize >= size {
            return Err(Error::InvalidParameter(format!("basis {size} too small for level {k}")));
        }
        let value = eigenvalues_at(l, &rung, c, scale)?[k as usize] * c.ev_per_mev;
        let delta = rows.last().map_or(0.0, |prev| value - prev.value);
        rows.push(ConvergenceRow {
            basis_size: size,
            value,
            delta,
        });
    }
    let tiny = 1e-12 * rows.iter().map(|r| r.value.abs()).fold(0.0, f64::max);
    let deltas: Vec<f64> = rows[1..].iter().map(|r| r.delta.abs()).collect();
    let non_monotone = deltas.windows(2).any(|w| w[1] > w[0] + tiny);
    let variational_violation = rows[1..].iter().any(|r| r.delta > tiny);
    let unbound = rows.last().is_some_and(|r| r.value >= 0.0);
    Ok(ConvergenceReport {
        state: QuantumState::new(k, l),
        scale,
        rows,
        non_monotone,
        variational_violation,
        unbound,
    })
}
