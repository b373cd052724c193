//! Reference level data: the built-in NIST set and a small CSV format.
//!
//! ```text
//! # comment
//! state,k,l,T_eV
//! 1S,0,0,-13.59843445
//! ```

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::spectra::{parse_state_label, QuantumState};

/// Rows of the standard comparison table, in order.
pub const TABLE_STATES: [QuantumState; 10] = [
    QuantumState::new(0, 0),
    QuantumState::new(0, 1),
    QuantumState::new(0, 2),
    QuantumState::new(0, 3),
    QuantumState::new(0, 4),
    QuantumState::new(1, 0),
    QuantumState::new(1, 1),
    QuantumState::new(1, 2),
    QuantumState::new(2, 0),
    QuantumState::new(2, 1),
];

/// Spin-averaged NIST binding energies (eV) for [`TABLE_STATES`].
const NIST_EV: [f64; 10] = [
    -13.59843445,
    -3.39959812,
    -1.51092434,
    -0.84989357,
    -0.54393196,
    -3.39962387,
    -1.51093197,
    -0.84989548,
    -1.51093960,
    -0.84989834,
];

pub const CSV_HEADER: [&str; 4] = ["state", "k", "l", "T_eV"];

/// Reference binding energies keyed by state, in insertion order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReferenceDataset {
    pub source: String,
    entries: Vec<(QuantumState, f64)>,
}

impl ReferenceDataset {
    pub fn new(source: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            entries: Vec::new(),
        }
    }

    /// Adds an entry; `line` is used only for error messages.
    pub fn insert(&mut self, state: QuantumState, energy_ev: f64, line: usize) -> Result<()> {
        if self.get(state).is_some() {
            return Err(Error::DuplicateState {
                label: state.label(),
                line,
            });
        }
        if !(energy_ev.is_finite() && energy_ev < 0.0) {
            return Err(Error::Parse {
                line,
                message: format!("binding energy of {state} must be negative, got {energy_ev}"),
            });
        }
        self.entries.push((state, energy_ev));
        Ok(())
    }

    pub fn get(&self, state: QuantumState) -> Option<f64> {
        self.entries.iter().find(|(s, _)| *s == state).map(|(_, e)| *e)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = QuantumState> + '_ {
        self.entries.iter().map(|(s, _)| *s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (QuantumState, f64)> + '_ {
        self.entries.iter().copied()
    }
}

pub fn builtin_reference() -> ReferenceDataset {
    ReferenceDataset {
        source: "NIST (spin-averaged)".into(),
        entries: TABLE_STATES.iter().copied().zip(NIST_EV).collect(),
    }
}

/// Splits one CSV line, honouring quotes.
fn split_record(text: &str, line: usize) -> Result<csv::StringRecord> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    match reader.records().next() {
        Some(Ok(record)) => Ok(record),
        Some(Err(e)) => Err(parse_error(line, e.to_string())),
        None => Ok(csv::StringRecord::new()),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses reference CSV text. `source` labels the result.
pub fn parse_reference_csv(text: &str, source: &str) -> Result<ReferenceDataset> {
    let mut dataset = ReferenceDataset::new(source);
    let mut seen_header = false;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record = split_record(trimmed, line)?;
        if !seen_header {
            let header: Vec<&str> = record.iter().collect();
            if header != CSV_HEADER {
                return Err(parse_error(
                    line,
                    format!("expected header {:?}, got {header:?}", CSV_HEADER.join(",")),
                ));
            }
            seen_header = true;
            continue;
        }
        if record.len() != 4 {
            return Err(parse_error(line, format!("expected 4 fields, got {}", record.len())));
        }
        let label = parse_state_label(&record[0]).map_err(|e| parse_error(line, e.to_string()))?;
        let k: u32 = record[1]
            .parse()
            .map_err(|_| parse_error(line, format!("bad k {:?}", &record[1])))?;
        let l: u32 = record[2]
            .parse()
            .map_err(|_| parse_error(line, format!("bad l {:?}", &record[2])))?;
        let state = QuantumState::new(k, l);
        if label != state {
            return Err(parse_error(
                line,
                format!("label {} disagrees with (k,l) = ({k},{l})", &record[0]),
            ));
        }
        let energy: f64 = record[3]
            .parse()
            .map_err(|_| parse_error(line, format!("bad energy {:?}", &record[3])))?;
        dataset.insert(state, energy, line)?;
    }
    Ok(dataset)
}

pub fn load_reference_csv(path: impl AsRef<Path>) -> Result<ReferenceDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_reference_csv(&text, &path.display().to_string())
}

/// Writes a dataset in the format read by [`parse_reference_csv`].
pub fn reference_to_csv(data: &ReferenceDataset) -> String {
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for (s, e) in data.iter() {
        out.push_str(&format!("{},{},{},{}\n", s.label(), s.k, s.l, e));
    }
    out
}
