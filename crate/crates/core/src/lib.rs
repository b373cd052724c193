//! Hydrogen energy levels from several relativistic and quasiclassical
//! models, a spinless Salpeter solver, and table reproduction utilities.

// `!(x > 0.0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod harness;
pub mod potential;
pub mod quadrature;
pub mod salpeter;
pub mod spectra;
pub mod verifier;

pub use constants::{Constants, DerivedMasses, MassChoice};
pub use error::{Error, Result};
pub use potential::PotentialParams;
pub use spectra::{DiracState, EnergyLevel, Model, QuantumState};
