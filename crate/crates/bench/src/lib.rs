// SPDX-License-Identifier: Apache-2.0

//! Command-line experiments over the `simon-engine` models.
//!
//! Every command returns an [`Output`] holding the same records rendered as
//! JSON and as CSV, plus whether all expectations held. Exit status is 0 when
//! they did, 1 on an expectation mismatch and 2 on bad input.

pub mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use simon_engine::cost::Calibration;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "simon-bench",
    version,
    about = "Simon 32/64 engine models and cost reports"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arch {
    Serial,
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cell {
    Ff,
    Latch1,
    Latch8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    Voltage,
    Duty,
    Wordlength,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encrypt every vector in a file and check any expected ciphertexts.
    Encrypt {
        #[arg(long)]
        vectors: PathBuf,
        /// Also decrypt each result and cross-check both engine models.
        #[arg(long)]
        verify: bool,
    },
    /// Run one engine model over a vector file.
    Simulate {
        #[arg(long, value_enum)]
        arch: Arch,
        #[arg(long, value_enum)]
        cell: Cell,
        #[arg(long)]
        vectors: PathBuf,
        /// Per-cycle activity dump.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Simulate every design and check it against the published summary table.
    Compare {
        /// Calibration JSON; defaults to the shipped calibration.
        #[arg(long)]
        calibration: Option<PathBuf>,
        /// Published summary table; defaults to the shipped one.
        #[arg(long)]
        published: Option<PathBuf>,
    },
    /// Recompute efficiency metrics and flag deviations from published values.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        /// Published derived values; defaults to the shipped table.
        #[arg(long)]
        published: Option<PathBuf>,
    },
    /// Evaluate a model over a range of one variable.
    Sweep {
        #[arg(long, value_enum)]
        var: SweepVar,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        /// Cipher block size for wordlength sweeps.
        #[arg(long, default_value_t = 128)]
        block: u32,
        #[arg(long)]
        calibration: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) | CliError::Io { .. } => 2,
        }
    }
}

/// A rendered report.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: serde_json::Value,
    pub csv: String,
    /// All expectations held.
    pub ok: bool,
}

impl Output {
    pub fn new<J: Serialize, R: Serialize>(
        json: &J,
        rows: &[R],
        ok: bool,
    ) -> Result<Self, CliError> {
        Ok(Self {
            json: serde_json::to_value(json).map_err(|e| CliError::Input(e.to_string()))?,
            csv: csv_text(rows)?,
            ok,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
        }
    }
}

fn csv_text<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn load_calibration(path: Option<&Path>) -> Result<Calibration, CliError> {
    match path {
        None => Ok(Calibration::shipped().clone()),
        Some(p) => Calibration::from_json(&read_file(p)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
    }
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Encrypt { vectors, verify } => commands::encrypt::run(vectors, *verify),
        Command::Simulate {
            arch,
            cell,
            vectors,
            trace,
        } => commands::simulate::run(*arch, *cell, vectors, trace.as_deref()),
        Command::Compare {
            calibration,
            published,
        } => commands::compare::run(calibration.as_deref(), published.as_deref()),
        Command::Metrics { input, published } => {
            commands::metrics::run(input, published.as_deref())
        }
        Command::Sweep {
            var,
            from,
            to,
            step,
            block,
            calibration,
        } => commands::sweep::run(*var, *from, *to, *step, *block, calibration.as_deref()),
    }
}

/// Runs a parsed command line and writes its report.
pub fn run(cli: &Cli) -> ExitCode {
    let result = execute(&cli.command).and_then(|out| {
        let text = out.render(cli.format);
        match &cli.out {
            Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?,
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?,
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
