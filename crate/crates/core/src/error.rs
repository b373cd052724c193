use std::path::PathBuf;

/// Errors produced by the level calculators, the verifier and the harness.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("supercritical charge: Z = {z} gives Zα = {z_alpha:.6} ≥ {limit} (no bound state)")]
    SupercriticalCharge { z: u32, z_alpha: f64, limit: f64 },

    #[error("argument outside the domain of {operation}: {detail}")]
    Domain { operation: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no classically allowed region (offset s - m+² = {s_offset:e} MeV², l = {l})")]
    NoBoundRegion { s_offset: f64, l: u32 },

    #[error("quadrature did not reach relative tolerance {target:e}: estimate {estimate:e} after {subdivisions} subdivisions")]
    QuadratureFailure {
        target: f64,
        estimate: f64,
        subdivisions: usize,
    },

    #[error("overlap matrix condition number {condition:e} exceeds {limit:e}")]
    IllConditionedBasis { condition: f64, limit: f64 },

    #[error(
        "level {level} moved by {delta_ev:e} eV when the basis doubled to {basis_size} (tolerance {tolerance_ev:e} eV)"
    )]
    NoConvergence {
        level: usize,
        basis_size: usize,
        delta_ev: f64,
        tolerance_ev: f64,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate state {label} at line {line}")]
    DuplicateState { label: String, line: usize },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(operation: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            operation,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            message: err.to_string(),
        }
    }
}
