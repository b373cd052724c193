//! `key = value` configuration files (TOML syntax).
//!
//! ```text
//! # constants
//! alpha = 7.2973525664e-3
//! m_e_mev = 0.5109989461
//! # potential
//! lambda_mev = 840.0
//! z = 1
//! # Salpeter solver
//! basis_size = 64
//! scale_search = true
//! ```

use serde::Deserialize;
use std::path::Path;

use crate::constants::MassChoice;
use crate::error::{Error, Result};
use crate::harness::Environment;
use crate::salpeter::ScaleSearch;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub alpha: Option<f64>,
    pub m_e_mev: Option<f64>,
    pub m_p_mev: Option<f64>,
    pub hbar_c: Option<f64>,
    pub lambda_mev: Option<f64>,
    pub z: Option<u32>,
    pub basis_size: Option<usize>,
    pub scale: Option<f64>,
    pub quad_nodes: Option<usize>,
    pub scale_search: Option<bool>,
    pub tolerance_ev: Option<f64>,
    pub reduced_mass: Option<bool>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ConfigFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

impl ConfigFile {
    /// Overrides the fields of `env` that are present in the file.
    pub fn apply(&self, env: &mut Environment) {
        let c = &mut env.constants;
        let pairs = [
            ("alpha", self.alpha),
            ("m_e_mev", self.m_e_mev),
            ("m_p_mev", self.m_p_mev),
            ("hbar_c", self.hbar_c),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                c.set_by_key(key, v);
            }
        }
        if let Some(a) = self.alpha {
            env.params.alpha = a;
        }
        if let Some(l) = self.lambda_mev {
            env.params.lambda = l;
        }
        if let Some(z) = self.z {
            env.params.z = z;
        }
        let s = &mut env.solver;
        if let Some(n) = self.basis_size {
            s.basis_size = n;
        }
        if self.scale.is_some() {
            s.scale = self.scale;
        }
        if self.quad_nodes.is_some() {
            s.quad_nodes = self.quad_nodes;
        }
        if let Some(on) = self.scale_search {
            s.scale_search = on.then(ScaleSearch::default);
        }
        if let Some(t) = self.tolerance_ev {
            s.tolerance_ev = t;
        }
        if let Some(r) = self.reduced_mass {
            env.mass_choice = if r { MassChoice::Reduced } else { MassChoice::Electron };
        }
    }
}
