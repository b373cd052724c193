//! Command-line front end. [`run`] is the whole program minus process exit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

use crate::config::load_config;
use crate::constants::{Constants, MassChoice};
use crate::error::Error;
use crate::harness::{
    builtin_reference, compare_table2, generate_table1, load_reference_csv, table1_to_csv, table2_to_csv,
    tables_to_json, Environment, Flag, Precision, ReferenceDataset, Table1, Table2, TABLE_STATES,
};
use crate::salpeter::{convergence_report, solve_levels, ScaleSearch};
use crate::spectra::{critical_z, parse_state_list, qc_complex_mass, qc_level, CriticalModel, Model, QuantumState};
use crate::verifier::verification_report;

/// Residuals above this make `verify` fail.
pub const VERIFY_THRESHOLD: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(
    name = "hydrogen-levels",
    version,
    about = "Hydrogen energy levels across relativistic and quasiclassical models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: GlobalOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GlobalOptions {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Key/value configuration file applied before the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Form-factor scale Λ (MeV).
    #[arg(long = "lambda-mev", global = true)]
    pub lambda_mev: Option<f64>,
    /// Nuclear charge.
    #[arg(long, global = true)]
    pub z: Option<u32>,
    /// Fine-structure constant.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Electron mass (MeV).
    #[arg(long = "me-mev", global = true)]
    pub me_mev: Option<f64>,
    /// Proton mass (MeV).
    #[arg(long = "mp-mev", global = true)]
    pub mp_mev: Option<f64>,
    /// Reference levels CSV (`state,k,l,T_eV`) replacing the built-in NIST set.
    #[arg(long, global = true)]
    pub reference: Option<PathBuf>,
    /// Salpeter basis size.
    #[arg(long = "basis-size", global = true)]
    pub basis_size: Option<usize>,
    /// Salpeter basis length scale (1/MeV).
    #[arg(long, global = true)]
    pub scale: Option<f64>,
    /// Salpeter momentum quadrature order.
    #[arg(long = "quad-nodes", global = true)]
    pub quad_nodes: Option<usize>,
    /// Use the given scale as is instead of searching around it.
    #[arg(long = "no-scale-search", global = true)]
    pub no_scale_search: bool,
    /// Use the reduced mass in the Schrödinger and scalar-Coulomb formulas.
    #[arg(long = "reduced-mass", global = true)]
    pub reduced_mass: bool,
}

#[derive(Debug, Args)]
pub struct StateSelection {
    /// Comma-separated states: "1S", "2P", "(k,l)" or "k:l".
    #[arg(long)]
    pub states: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Binding energies of selected states for one or more models.
    Spectrum {
        /// Models, comma separated: schrodinger, sommerfeld, kg, scalar, ss, qc.
        #[arg(long, value_delimiter = ',', default_value = "qc")]
        model: Vec<Model>,
        #[command(flatten)]
        states: StateSelection,
    },
    /// Level table against the reference plus the relative-error table.
    Compare {
        #[arg(long, value_delimiter = ',', default_value = "kg,ss,qc")]
        model: Vec<Model>,
        #[command(flatten)]
        states: StateSelection,
    },
    /// Numerical check of the quantization condition at the QC eigenvalue.
    Verify {
        #[command(flatten)]
        states: StateSelection,
    },
    /// Complex eigenmasses and widths.
    Widths {
        #[command(flatten)]
        states: StateSelection,
    },
    /// Salpeter levels, or a convergence ladder with --ladder.
    Salpeter {
        #[command(flatten)]
        states: StateSelection,
        /// Basis sizes for a convergence report, e.g. 8,16,32,64.
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<usize>>,
    },
    /// Constants, derived masses and critical charges.
    Constants,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Data for stdout, plus a diagnostic when the run still counts as failed.
struct Outcome {
    data: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(data: String) -> Self {
        Self { data, failure: None }
    }
}

/// A rendered result: rows for text/CSV and a JSON value.
struct Report {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    json: Value,
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn build_environment(o: &GlobalOptions) -> Result<Environment, Failure> {
    let mut env = Environment::default();
    if let Some(path) = &o.config {
        load_config(path).map_err(usage)?.apply(&mut env);
    }
    if let Some(a) = o.alpha {
        env.constants.alpha = a;
        env.params.alpha = a;
    }
    if let Some(m) = o.me_mev {
        env.constants.m_e = m;
    }
    if let Some(m) = o.mp_mev {
        env.constants.m_p = m;
    }
    if let Some(l) = o.lambda_mev {
        env.params.lambda = l;
    }
    if let Some(z) = o.z {
        env.params.z = z;
    }
    if let Some(n) = o.basis_size {
        env.solver.basis_size = n;
    }
    if o.scale.is_some() {
        env.solver.scale = o.scale;
    }
    if o.quad_nodes.is_some() {
        env.solver.quad_nodes = o.quad_nodes;
    }
    if o.no_scale_search {
        env.solver.scale_search = None;
    } else if env.solver.scale_search.is_none() && o.scale.is_none() && o.config.is_none() {
        env.solver.scale_search = Some(ScaleSearch::default());
    }
    if o.reduced_mass {
        env.mass_choice = MassChoice::Reduced;
    }
    env.constants.validate().map_err(usage)?;
    env.params.validate().map_err(usage)?;
    env.solver.validate().map_err(usage)?;
    Ok(env)
}

fn states_or_default(sel: &StateSelection) -> Result<Vec<QuantumState>, Failure> {
    match &sel.states {
        None => Ok(TABLE_STATES.to_vec()),
        Some(text) => {
            let states = parse_state_list(text).map_err(usage)?;
            if states.is_empty() {
                return Err(Failure::Usage("empty state list".into()));
            }
            Ok(states)
        }
    }
}

fn reference(o: &GlobalOptions) -> Result<ReferenceDataset, Failure> {
    match &o.reference {
        Some(path) => Ok(load_reference_csv(path).map_err(usage)?),
        None => Ok(builtin_reference()),
    }
}

fn fmt_opt(v: Option<f64>, decimals: usize) -> String {
    v.map_or_else(|| "NA".to_string(), |x| format!("{x:.decimals$}"))
}

fn render_text(r: &Report) -> String {
    let cols = r.headers.len();
    let mut widths: Vec<usize> = r.headers.iter().map(|h| h.chars().count()).collect();
    for row in &r.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            let pad = widths[i] - cell.chars().count();
            if i > 0 {
                s.push_str("  ");
            }
            if i == 0 {
                s.push_str(cell);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str(&" ".repeat(pad));
                s.push_str(cell);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(&r.headers);
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * cols.saturating_sub(1)));
    out.push('\n');
    for row in &r.rows {
        out.push_str(&line(row));
    }
    out
}

fn render_csv(r: &Report) -> String {
    let mut out = r.headers.join(",") + "\n";
    for row in &r.rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Csv => render_csv(r),
        Format::Json => serde_json::to_string_pretty(&r.json).expect("json") + "\n",
    }
}

fn table1_report(t: &Table1, with_reference: bool) -> Report {
    let mut headers = vec!["state".to_string(), "k".into(), "l".into()];
    if with_reference {
        headers.push("T_ref (eV)".into());
    }
    headers.extend(t.models.iter().map(|m| format!("T_{} (eV)", m.tag())));
    let rows = t
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![row.label.clone(), row.state.k.to_string(), row.state.l.to_string()];
            if with_reference {
                cells.push(fmt_opt(row.reference, 8));
            }
            cells.extend(row.cells.iter().map(|c| fmt_opt(c.value, 8)));
            cells
        })
        .collect();
    Report {
        headers,
        rows,
        json: Value::Null,
    }
}

fn table2_report(t: &Table2) -> Report {
    let mut headers = vec!["state".to_string()];
    for m in &t.models {
        headers.push(format!("eps_{} (%)", m.tag()));
        headers.push(format!("flag_{}", m.tag()));
    }
    headers.push("M_im (MeV)".into());
    headers.push("flag_M_im".into());
    let rows = t
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![row.label.clone()];
            for e in &row.epsilon {
                cells.push(e.value.map_or("NA".into(), |v| format!("{v:.2e}")));
                cells.push(e.flag.as_str().into());
            }
            cells.push(fmt_opt(row.m_im.value, 6));
            cells.push(row.m_im.flag.as_str().into());
            cells
        })
        .collect();
    Report {
        headers,
        rows,
        json: Value::Null,
    }
}

fn cell_failures(t: &Table1) -> Vec<String> {
    let mut out = Vec::new();
    for row in &t.rows {
        for (m, c) in t.models.iter().zip(&row.cells) {
            if let Some(e) = &c.error {
                out.push(format!("{} {}: {e}", row.label, m.key()));
            }
        }
    }
    out
}

fn cmd_spectrum(
    models: &[Model],
    sel: &StateSelection,
    o: &GlobalOptions,
    env: &Environment,
) -> Result<String, Failure> {
    let states = states_or_default(sel)?;
    let table = generate_table1(models, &states, env, &ReferenceDataset::new(""));
    let failures = cell_failures(&table);
    if !failures.is_empty() {
        return Err(Failure::Compute(failures.join("\n")));
    }
    Ok(match o.format {
        Format::Json => tables_to_json(&table, None, &env.constants),
        Format::Csv => {
            // The reference column is empty for a bare spectrum; drop it.
            let csv = table1_to_csv(&table, Precision::Table);
            csv.lines()
                .map(|l| {
                    let mut f: Vec<&str> = l.split(',').collect();
                    f.remove(3);
                    f.join(",") + "\n"
                })
                .collect()
        }
        Format::Text => render_text(&table1_report(&table, false)),
    })
}

fn cmd_compare(
    models: &[Model],
    sel: &StateSelection,
    o: &GlobalOptions,
    env: &Environment,
    err: &mut dyn Write,
) -> Result<Outcome, Failure> {
    let states = states_or_default(sel)?;
    let reference = reference(o)?;
    let t1 = generate_table1(models, &states, env, &reference);
    let t2 = compare_table2(&t1, &env.constants);
    let failures = cell_failures(&t1);
    for f in &failures {
        let _ = writeln!(err, "unavailable: {f}");
    }
    let out = match o.format {
        Format::Json => tables_to_json(&t1, Some(&t2), &env.constants),
        Format::Csv => format!(
            "{}\n{}",
            table1_to_csv(&t1, Precision::Table),
            table2_to_csv(&t2, Precision::Table)
        ),
        Format::Text => {
            let mismatches = t2.mismatches();
            let mut s = format!("Binding energies (reference: {})\n", t1.reference_source);
            s.push_str(&render_text(&table1_report(&t1, true)));
            s.push_str("\nRelative errors |T - T_ref|/|T_ref| (%), flagged against published values at 2%\n");
            s.push_str(&render_text(&table2_report(&t2)));
            let matched = t2
                .rows
                .iter()
                .flat_map(|r| r.epsilon.iter().chain(std::iter::once(&r.m_im)))
                .filter(|c| c.flag == Flag::Match)
                .count();
            s.push_str(&format!("\n{matched} MATCH, {} MISMATCH\n", mismatches.len()));
            s
        }
    };
    Ok(Outcome {
        data: out,
        failure: (!failures.is_empty()).then(|| format!("{} cell(s) unavailable", failures.len())),
    })
}

fn cmd_verify(sel: &StateSelection, o: &GlobalOptions, env: &Environment) -> Result<Outcome, Failure> {
    let states = states_or_default(sel)?;
    let rows = verification_report(&states, &env.qc())?;
    let report = Report {
        headers: [
            "state",
            "s_offset (MeV^2)",
            "r1 (1/MeV)",
            "r2 (1/MeV)",
            "phase",
            "pi(k+1/2)",
            "residual",
            "I_inf/2piN-1",
        ]
        .map(String::from)
        .to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.state.label(),
                    format!("{:.9e}", r.s_offset),
                    format!("{:.6e}", r.r1),
                    format!("{:.6e}", r.r2),
                    format!("{:.12}", r.phase_integral),
                    format!("{:.12}", std::f64::consts::PI * (r.state.k as f64 + 0.5)),
                    format!("{:.3e}", r.residual),
                    format!("{:.3e}", r.i_infinity_check),
                ]
            })
            .collect(),
        json: json!({ "threshold": VERIFY_THRESHOLD, "rows": rows }),
    };
    let worst = rows.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    Ok(Outcome {
        data: emit(&report, o.format),
        failure: (worst > VERIFY_THRESHOLD)
            .then(|| format!("quantization residual {worst:e} above {VERIFY_THRESHOLD:e}")),
    })
}

fn cmd_widths(sel: &StateSelection, o: &GlobalOptions, env: &Environment) -> Result<String, Failure> {
    let states = states_or_default(sel)?;
    let c = &env.constants;
    let d = c.derive();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for s in &states {
        let m = qc_complex_mass(*s, &d, c);
        let t = qc_level(*s, &d, c).value;
        rows.push(vec![
            s.label(),
            s.n_principal().to_string(),
            format!("{:.9}", m.re),
            format!("{:.6}", m.im),
            format!("{:.6}", m.width()),
            format!("{t:.8}"),
        ]);
        items.push(json!({
            "state": s.label(), "k": s.k, "l": s.l, "n": s.n_principal(),
            "m_re_mev": m.re, "m_im_mev": m.im, "width_mev": m.width(), "t_ev": t,
        }));
    }
    let report = Report {
        headers: ["state", "N", "M_re (MeV)", "M_im (MeV)", "Gamma (MeV)", "T (eV)"]
            .map(String::from)
            .to_vec(),
        rows,
        json: Value::Array(items),
    };
    Ok(emit(&report, o.format))
}

fn cmd_salpeter(
    sel: &StateSelection,
    ladder: Option<&[usize]>,
    o: &GlobalOptions,
    env: &Environment,
) -> Result<String, Failure> {
    let states = match &sel.states {
        None => vec![
            QuantumState::new(0, 0),
            QuantumState::new(0, 1),
            QuantumState::new(1, 0),
        ],
        Some(_) => states_or_default(sel)?,
    };
    let c = &env.constants;
    let mut cfg = env.solver;
    cfg.z = env.params.z;
    if let Some(ladder) = ladder {
        let mut rows = Vec::new();
        let mut items = Vec::new();
        for s in &states {
            let report = convergence_report(s.l, s.k, ladder, &cfg, c).map_err(|e| match e {
                Error::InvalidParameter(_) => usage(e),
                e => e.into(),
            })?;
            for r in &report.rows {
                rows.push(vec![
                    s.label(),
                    r.basis_size.to_string(),
                    format!("{:.8}", r.value),
                    format!("{:.3e}", r.delta),
                    if report.flagged() { "FLAGGED" } else { "ok" }.into(),
                ]);
            }
            items.push(serde_json::to_value(&report).expect("json"));
        }
        let report = Report {
            headers: ["state", "basis_size", "T (eV)", "delta (eV)", "status"]
                .map(String::from)
                .to_vec(),
            rows,
            json: Value::Array(items),
        };
        return Ok(emit(&report, o.format));
    }
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut by_l: std::collections::BTreeMap<u32, u32> = Default::default();
    for s in &states {
        let e = by_l.entry(s.l).or_insert(0);
        *e = (*e).max(s.k);
    }
    let mut solved = std::collections::BTreeMap::new();
    for (l, k_max) in by_l {
        let mut cfg = cfg;
        cfg.basis_size = cfg.basis_size.max(2 * (k_max as usize + 1));
        for level in solve_levels(l, k_max as usize + 1, &cfg, c)? {
            solved.insert(level.state, level);
        }
    }
    for s in &states {
        let level = solved[s];
        rows.push(vec![
            s.label(),
            format!("{:.8}", level.binding_ev),
            format!("{:.4}", level.scale),
            format!("{:.3e}", level.doubling_shift_ev),
        ]);
        items.push(serde_json::to_value(level).expect("json"));
    }
    let report = Report {
        headers: ["state", "T_SS (eV)", "scale (1/MeV)", "doubling shift (eV)"]
            .map(String::from)
            .to_vec(),
        rows,
        json: Value::Array(items),
    };
    Ok(emit(&report, o.format))
}

fn cmd_constants(o: &GlobalOptions, env: &Environment) -> String {
    let c: &Constants = &env.constants;
    let d = c.derive();
    let critical = [
        (
            "critical Z sommerfeld j=1/2",
            critical_z(CriticalModel::Sommerfeld { twice_j: 1 }, c),
        ),
        (
            "critical Z sommerfeld j=3/2",
            critical_z(CriticalModel::Sommerfeld { twice_j: 3 }, c),
        ),
        ("critical Z kg l=0", critical_z(CriticalModel::KleinGordon { l: 0 }, c)),
        ("critical Z kg l=1", critical_z(CriticalModel::KleinGordon { l: 1 }, c)),
    ];
    let mut pairs: Vec<(String, String)> = vec![
        ("alpha".into(), format!("{:e}", c.alpha)),
        ("m_e (MeV)".into(), format!("{}", c.m_e)),
        ("m_p (MeV)".into(), format!("{}", c.m_p)),
        ("hbar_c (MeV fm)".into(), format!("{}", c.hbar_c)),
        ("m_plus (MeV)".into(), format!("{}", d.m_plus)),
        ("m_minus (MeV)".into(), format!("{}", d.m_minus)),
        ("mu (MeV)".into(), format!("{}", d.mu)),
        ("lambda (MeV)".into(), format!("{}", env.params.lambda)),
        ("Z".into(), env.params.z.to_string()),
        ("Rydberg constant (1/m)".into(), format!("{:.3}", c.rydberg_constant())),
        (
            "Rydberg energy m_e (eV)".into(),
            format!("{:.8}", c.rydberg_energy(MassChoice::Electron)),
        ),
        (
            "Rydberg energy mu (eV)".into(),
            format!("{:.8}", c.rydberg_energy(MassChoice::Reduced)),
        ),
    ];
    pairs.extend(critical.iter().map(|(k, v)| (k.to_string(), v.to_string())));
    let json = json!({
        "constants": c,
        "derived": d,
        "potential": env.params,
        "rydberg_constant_per_m": c.rydberg_constant(),
        "rydberg_energy_ev": { "electron": c.rydberg_energy(MassChoice::Electron), "reduced": c.rydberg_energy(MassChoice::Reduced) },
        "critical_z": { "sommerfeld_j1/2": critical[0].1, "sommerfeld_j3/2": critical[1].1, "kg_l0": critical[2].1, "kg_l1": critical[3].1 },
    });
    let report = Report {
        headers: vec!["quantity".into(), "value".into()],
        rows: pairs.into_iter().map(|(k, v)| vec![k, v]).collect(),
        json,
    };
    emit(&report, o.format)
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let o = &cli.options;
    let env = build_environment(o)?;
    match &cli.command {
        Command::Spectrum { model, states } => cmd_spectrum(model, states, o, &env).map(Outcome::ok),
        Command::Compare { model, states } => cmd_compare(model, states, o, &env, err),
        Command::Verify { states } => cmd_verify(states, o, &env),
        Command::Widths { states } => cmd_widths(states, o, &env).map(Outcome::ok),
        Command::Salpeter { states, ladder } => cmd_salpeter(states, ladder.as_deref(), o, &env).map(Outcome::ok),
        Command::Constants => Ok(Outcome::ok(cmd_constants(o, &env))),
    }
}

/// Runs the CLI: data to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 on usage errors, 1 on computational errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, err) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.data.as_bytes());
            match outcome.failure {
                None => 0,
                Some(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    1
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
