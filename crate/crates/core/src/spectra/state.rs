use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Spectroscopic letters for l = 0, 1, 2, … (J is skipped by convention).
pub const ORBITAL_LETTERS: &str = "SPDFGHIKLMNOQRTUVWXYZ";

/// Radial and orbital quantum numbers of a spinless level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuantumState {
    pub k: u32,
    pub l: u32,
}

impl QuantumState {
    pub const fn new(k: u32, l: u32) -> Self {
        Self { k, l }
    }

    /// N = k + l + 1.
    pub fn n_principal(&self) -> u32 {
        self.k + self.l + 1
    }

    /// (k + 1/2) + (l + 1/2); equal to [`Self::n_principal`] for l ≥ 0.
    pub fn qc_principal(&self) -> f64 {
        (self.k as f64 + 0.5) + (self.l as f64 + 0.5)
    }

    /// Label of the form "(k+1)L", e.g. k=0, l=1 → "1P".
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match ORBITAL_LETTERS.chars().nth(self.l as usize) {
            Some(letter) => write!(f, "{}{}", self.k + 1, letter),
            None => write!(f, "({},{})", self.k, self.l),
        }
    }
}

impl FromStr for QuantumState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_state_label(s)
    }
}

fn label_error(text: &str, why: &str) -> Error {
    Error::Parse {
        line: 1,
        message: format!("invalid state label {text:?}: {why}"),
    }
}

/// Parses "1S", "2P", … or an explicit pair "(k,l)" / "k:l".
pub fn parse_state_label(text: &str) -> Result<QuantumState> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return parse_pair(text, inner, ',');
    }
    if t.contains(':') {
        return parse_pair(text, t, ':');
    }

    let split = t
        .find(|c: char| !c.is_ascii_digit())
        .ok_or_else(|| label_error(text, "missing orbital letter"))?;
    let (digits, rest) = t.split_at(split);
    if digits.is_empty() {
        return Err(label_error(text, "missing leading integer"));
    }
    let lead: u32 = digits
        .parse()
        .map_err(|_| label_error(text, "leading integer out of range"))?;
    if lead == 0 {
        return Err(label_error(text, "labels start at 1"));
    }
    let mut chars = rest.chars();
    let letter = chars.next().map(|c| c.to_ascii_uppercase());
    if chars.next().is_some() {
        return Err(label_error(text, "trailing characters"));
    }
    let l = letter
        .and_then(|c| ORBITAL_LETTERS.find(c))
        .ok_or_else(|| label_error(text, "unknown orbital letter"))?;
    Ok(QuantumState::new(lead - 1, l as u32))
}

fn parse_pair(text: &str, inner: &str, sep: char) -> Result<QuantumState> {
    let mut parts = inner.split(sep).map(str::trim);
    let (Some(k), Some(l), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(label_error(text, "expected two numbers"));
    };
    let k = k.parse().map_err(|_| label_error(text, "bad radial number"))?;
    let l = l.parse().map_err(|_| label_error(text, "bad orbital number"))?;
    Ok(QuantumState::new(k, l))
}

/// Splits a comma-separated state list, keeping "(k,l)" pairs intact.
pub fn parse_state_list(text: &str) -> Result<Vec<QuantumState>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                push_token(&text[start..i], &mut out)?;
                start = i + 1;
            }
            _ => {}
        }
    }
    push_token(&text[start..], &mut out)?;
    Ok(out)
}

fn push_token(token: &str, out: &mut Vec<QuantumState>) -> Result<()> {
    if !token.trim().is_empty() {
        out.push(parse_state_label(token)?);
    }
    Ok(())
}

/// (n, j) state of the Sommerfeld formula. j is stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiracState {
    n: u32,
    twice_j: u32,
}

impl DiracState {
    pub fn new(n: u32, twice_j: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("principal number must be ≥ 1".into()));
        }
        if twice_j.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "j must be half-integer, got {twice_j}/2"
            )));
        }
        if twice_j + 1 > 2 * n {
            return Err(Error::InvalidParameter(format!(
                "j + 1/2 = {} exceeds n = {n}",
                twice_j.div_ceil(2)
            )));
        }
        Ok(Self { n, twice_j })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// j + 1/2 as an integer.
    pub fn kappa(&self) -> u32 {
        self.twice_j.div_ceil(2)
    }
}

impl fmt::Display for DiracState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} j={}/2", self.n, self.twice_j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_numbers() {
        let s = QuantumState::new(2, 1);
        assert_eq!(s.n_principal(), 4);
        assert_eq!(s.qc_principal(), 4.0);
    }

    #[test]
    fn labels_follow_table_rows() {
        assert_eq!(QuantumState::new(0, 1).label(), "1P");
        assert_eq!(QuantumState::new(1, 0).label(), "2S");
        assert_eq!(QuantumState::new(0, 4).label(), "1G");
    }

    #[test]
    fn parse_labels() {
        assert_eq!(parse_state_label("1P").unwrap(), QuantumState::new(0, 1));
        assert_eq!(parse_state_label("1S").unwrap(), QuantumState::new(0, 0));
        assert_eq!(parse_state_label("2P").unwrap(), QuantumState::new(1, 1));
        assert_eq!(parse_state_label("3S").unwrap(), QuantumState::new(2, 0));
        assert_eq!(parse_state_label(" 3d ").unwrap(), QuantumState::new(2, 2));
        assert_eq!(parse_state_label("(2,2)").unwrap(), QuantumState::new(2, 2));
        assert_eq!(parse_state_label("1:3").unwrap(), QuantumState::new(1, 3));
    }

    #[test]
    fn reject_bad_labels() {
        for bad in ["0S", "S", "1J", "1", "1SS", "x", "", "(1)", "-1S"] {
            assert!(parse_state_label(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn round_trip_all_short_labels() {
        for lead in 1..=9u32 {
            for letter in "SPDFGH".chars() {
                let label = format!("{lead}{letter}");
                let state = parse_state_label(&label).unwrap();
                assert_eq!(state.label(), label);
            }
        }
    }

    #[test]
    fn state_lists() {
        let states = parse_state_list("1S,(1,2), 2P,0:3").unwrap();
        assert_eq!(
            states,
            vec![
                QuantumState::new(0, 0),
                QuantumState::new(1, 2),
                QuantumState::new(1, 1),
                QuantumState::new(0, 3)
            ]
        );
        assert!(parse_state_list("").unwrap().is_empty());
        assert!(parse_state_list("1S,0S").is_err());
    }

    #[test]
    fn dirac_state_invariants() {
        let s = DiracState::new(2, 3).unwrap();
        assert_eq!(s.j(), 1.5);
        assert_eq!(s.kappa(), 2);
        assert!(DiracState::new(1, 3).is_err());
        assert!(DiracState::new(1, 2).is_err());
        assert!(DiracState::new(0, 1).is_err());
    }
}
