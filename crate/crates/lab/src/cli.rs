//! The `surfacelab` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 config error, 3 I/O
//! error, 4 threshold bracket not found.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use surfacelab_core::budget::BudgetModel;
use surfacelab_core::codes::Topology;

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::floorplan::plan;
use crate::reports::{braid_verify, budget, sabotage_step};
use crate::runner::run_memory_experiment;
use crate::table::{write_file, ResultTable};
use crate::threshold::estimate_threshold;

#[derive(Debug, Parser)]
#[command(name = "surfacelab", version, about = "Surface-code memory, braiding and layout experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Concatenated,
    Polynomial,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a memory experiment described by a JSON config.
    Simulate {
        config: PathBuf,
        /// CSV output; overrides `output_csv` in the config.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON output; overrides `output_json` in the config.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Estimate the threshold from a fresh run or a saved table.
    Threshold {
        config: PathBuf,
        /// Reuse a saved CSV or JSON table instead of simulating.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Report output; overrides `report` in the config.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Braid one hole pair around another and check the CNOT table.
    BraidVerify {
        #[arg(long)]
        json: bool,
        /// Drop one deformation step first (negative control).
        #[arg(long)]
        sabotage: bool,
    },
    /// Build a floorplan with assigned resonator frequencies.
    Plan {
        /// Planar distance.
        #[arg(long, conflicts_with = "toric")]
        d: Option<usize>,
        /// Toric side length.
        #[arg(long)]
        toric: Option<usize>,
        /// Conflict radius in tile pitches.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Failure budget for a code family.
    Budget {
        #[arg(long, value_enum, default_value_t = Family::Concatenated)]
        family: Family,
        /// Family constant `c`.
        #[arg(long, default_value_t = 1e4, conflicts_with = "table")]
        c: f64,
        /// Explicit `C[x]` values, comma separated.
        #[arg(long, value_delimiter = ',')]
        table: Option<Vec<f64>>,
        #[arg(long)]
        p: f64,
        /// Time steps of the algorithm.
        #[arg(long, default_value_t = 1e9)]
        t: f64,
        /// Logical qubits.
        #[arg(long, default_value_t = 1e3)]
        n: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Rows to print.
        #[arg(long, default_value_t = 5)]
        x_max: u32,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` and runs the command, writing results to `out`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| LabError::io("<stdout>", e))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Simulate { config, csv, json } => {
            let cfg = ExperimentConfig::load(&config)?;
            let table = run_memory_experiment(&cfg)?;
            let csv = csv.or(cfg.output_csv.as_ref().map(PathBuf::from));
            let json = json.or(cfg.output_json.as_ref().map(PathBuf::from));
            if let Some(p) = &csv {
                write_file(p, &table.to_csv())?;
            }
            if let Some(p) = &json {
                write_file(p, &table.to_json())?;
            }
            if csv.is_none() && json.is_none() {
                emit(out, &table.to_csv())?;
            }
            Ok(0)
        }
        Command::Threshold { config, replay, report, csv } => {
            let cfg = ExperimentConfig::load(&config)?;
            let table = match replay {
                Some(p) => ResultTable::load(&p)?,
                None => run_memory_experiment(&cfg)?,
            };
            if let Some(p) = csv.or(cfg.output_csv.as_ref().map(PathBuf::from)) {
                write_file(&p, &table.to_csv())?;
            }
            let rep = estimate_threshold(&table)?;
            let text = serde_json::to_string_pretty(&rep).expect("report serialises") + "\n";
            match report.or(cfg.report.as_ref().map(PathBuf::from)) {
                Some(p) => write_file(&p, &text)?,
                None => emit(out, &text)?,
            }
            Ok(0)
        }
        Command::BraidVerify { json, sabotage } => {
            let skip = if sabotage { Some(sabotage_step()?) } else { None };
            let rep = match braid_verify(skip) {
                Ok(r) => r,
                Err(LabError::Verification(msg)) => {
                    emit(out, &format!("braid does not act on the logical algebra: {msg}\n"))?;
                    return Ok(1);
                }
                Err(e) => return Err(e),
            };
            if json {
                emit(out, &(serde_json::to_string_pretty(&rep).expect("report serialises") + "\n"))?;
            } else {
                for (got, want) in rep.rows.iter().zip(&rep.expected) {
                    let mark = if got == want { "" } else { "   <- expected " };
                    let tail = if got == want { String::new() } else { want.clone() };
                    emit(out, &format!("{got}{mark}{tail}\n"))?;
                }
            }
            Ok(if rep.matches { 0 } else { 1 })
        }
        Command::Plan { d, toric, radius, out: path, svg } => {
            let topology = match (d, toric) {
                (_, Some(l)) => Topology::Toric { l },
                (Some(d), None) => Topology::Planar { d },
                (None, None) => return Err(LabError::Config("give --d or --toric".into())),
            };
            let doc = plan(topology, radius)?;
            match &path {
                Some(p) => write_file(p, &doc.to_json())?,
                None => emit(out, &doc.to_json())?,
            }
            if let Some(p) = &svg {
                write_file(p, &doc.to_svg())?;
            }
            Ok(0)
        }
        Command::Budget { family, c, table, p, t, n, eps, x_max, json } => {
            let model = match (table, family) {
                (Some(values), _) => BudgetModel::Table { values },
                (None, Family::Concatenated) => BudgetModel::Concatenated { c },
                (None, Family::Polynomial) => BudgetModel::Polynomial { c },
            };
            let rep = budget(model, p, t, n, eps, x_max)?;
            if json {
                emit(out, &(serde_json::to_string_pretty(&rep).expect("report serialises") + "\n"))?;
            } else {
                let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
                let mut s = format!("p = {p:e}  T = {t:e}  N = {n:e}  p_th = {}\n", fmt(rep.p_th));
                s.push_str("x  C[x]  gadget  algorithm\n");
                for r in &rep.rows {
                    s.push_str(&format!(
                        "{}  {}  {}  {}\n",
                        r.x,
                        fmt(r.c_x),
                        fmt(r.gadget_failure),
                        fmt(r.algorithm_failure)
                    ));
                }
                s.push_str(&rep.verdict);
                s.push('\n');
                emit(out, &s)?;
            }
            Ok(0)
        }
    }
}
