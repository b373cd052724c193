//! CSV and JSON renderings of the comparison tables.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::spectra::{parse_state_label, Model, QuantumState};

use super::tables::{Cell, Mismatch, Table1, Table1Row, Table2};

/// Missing values are written as this token.
pub const MISSING: &str = "NA";

/// Number formatting for CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// 8 decimals for eV, 6 for MeV, 3 significant digits for ε.
    #[default]
    Table,
    /// Shortest representation that parses back to the same f64.
    Full,
}

impl Precision {
    fn ev(&self, v: Option<f64>) -> String {
        match (v, self) {
            (None, _) => MISSING.into(),
            (Some(x), Precision::Table) => format!("{x:.8}"),
            (Some(x), Precision::Full) => format!("{x:?}"),
        }
    }

    fn mev(&self, v: Option<f64>) -> String {
        match (v, self) {
            (None, _) => MISSING.into(),
            (Some(x), Precision::Table) => format!("{x:.6}"),
            (Some(x), Precision::Full) => format!("{x:?}"),
        }
    }

    fn percent(&self, v: Option<f64>) -> String {
        match (v, self) {
            (None, _) => MISSING.into(),
            (Some(x), Precision::Table) => format!("{x:.2e}"),
            (Some(x), Precision::Full) => format!("{x:?}"),
        }
    }
}

fn model_from_tag(tag: &str) -> Option<Model> {
    Model::ALL.into_iter().find(|m| m.tag() == tag)
}

/// `state,k,l,T_ref,T_<TAG>...`
pub fn table1_to_csv(table: &Table1, precision: Precision) -> String {
    let mut out = String::from("state,k,l,T_ref");
    for m in &table.models {
        out.push_str(&format!(",T_{}", m.tag()));
    }
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}",
            row.label,
            row.state.k,
            row.state.l,
            precision.ev(row.reference)
        ));
        for cell in &row.cells {
            out.push(',');
            out.push_str(&precision.ev(cell.value));
        }
        out.push('\n');
    }
    out
}

fn parse_optional(field: &str, line: usize) -> Result<Option<f64>> {
    if field == MISSING {
        return Ok(None);
    }
    field.parse().map(Some).map_err(|_| Error::Parse {
        line,
        message: format!("bad number {field:?}"),
    })
}

/// Reads the output of [`table1_to_csv`]. Cell error messages are not kept.
pub fn parse_table1_csv(text: &str, reference_source: &str) -> Result<Table1> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() < 4 || fields[..4] != ["state", "k", "l", "T_ref"] {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected header {header:?}"),
        });
    }
    let models = fields[4..]
        .iter()
        .map(|f| {
            f.strip_prefix("T_").and_then(model_from_tag).ok_or(Error::Parse {
                line: 1,
                message: format!("unknown column {f:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (line, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = text.split(',').collect();
        if f.len() != 4 + models.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, got {}", 4 + models.len(), f.len()),
            });
        }
        let bad = |what: &str| Error::Parse {
            line,
            message: format!("bad {what}"),
        };
        let k = f[1].parse().map_err(|_| bad("k"))?;
        let l = f[2].parse().map_err(|_| bad("l"))?;
        let state = QuantumState::new(k, l);
        if let Ok(labelled) = parse_state_label(f[0]) {
            if labelled != state {
                return Err(bad("state label"));
            }
        }
        let cells = f[4..]
            .iter()
            .map(|v| {
                Ok(Cell {
                    value: parse_optional(v, line)?,
                    error: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(Table1Row {
            state,
            label: f[0].to_string(),
            reference: parse_optional(f[3], line)?,
            cells,
        });
    }
    Ok(Table1 {
        models,
        reference_source: reference_source.into(),
        rows,
    })
}

/// `state,eps_<TAG>,flag_<TAG>...,M_im,flag_M_im`
pub fn table2_to_csv(table: &Table2, precision: Precision) -> String {
    let mut out = String::from("state");
    for m in &table.models {
        out.push_str(&format!(",eps_{0},flag_{0}", m.tag()));
    }
    out.push_str(",M_im,flag_M_im\n");
    for row in &table.rows {
        out.push_str(&row.label);
        for e in &row.epsilon {
            out.push_str(&format!(",{},{}", precision.percent(e.value), e.flag.as_str()));
        }
        out.push_str(&format!(
            ",{},{}\n",
            precision.mev(row.m_im.value),
            row.m_im.flag.as_str()
        ));
    }
    out
}

#[derive(Debug, Serialize)]
struct TableSection<'a> {
    levels: &'a Table1,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_errors: Option<&'a Table2>,
}

#[derive(Debug, Serialize)]
struct Document<'a> {
    table: TableSection<'a>,
    models: Vec<&'static str>,
    constants: &'a Constants,
    mismatches: Vec<Mismatch>,
}

/// JSON document with keys `table`, `models`, `constants`, `mismatches`.
pub fn tables_to_json(table1: &Table1, table2: Option<&Table2>, constants: &Constants) -> String {
    let doc = Document {
        table: TableSection {
            levels: table1,
            relative_errors: table2,
        },
        models: table1.models.iter().map(|m| m.key()).collect(),
        constants,
        mismatches: table2.map(Table2::mismatches).unwrap_or_default(),
    };
    serde_json::to_string_pretty(&doc).expect("tables serialize") + "\n"
}
