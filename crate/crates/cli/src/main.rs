//! `singosc`: spectra, wavefunction tables, verification reports and limit
//! sweeps for the relativistic singular oscillator.
//!
//! Exit codes are 0 on success, 1 when a verification check fails, 2 for
//! usage or configuration errors and 3 when the parameters fall in a regime
//! the command cannot handle.

mod commands;
mod table;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use table::Table;

#[derive(Parser, Debug)]
#[command(name = "singosc", version, about = "Relativistic singular oscillator toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Energy levels and exponents for ranges of n and l
    Spectrum(Common),
    /// Radial wavefunction values on a grid
    Wavefunction(Common),
    /// Residuals of the finite-difference equations
    Verify(Common),
    /// Gram matrix of the radial states by quadrature
    Ortho {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Non-relativistic energy and wavefunction limits as mc²/ħω grows
    Limits {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: LimitArgs,
    },
    /// Ground-state energy against the coupling for c = 1, 4 and infinity
    Figure1 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coupling: CouplingGrid,
    },
    /// Relativistic plane wave against its Euclidean limit
    Planewave {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        wave: PlaneWaveArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Mass
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Oscillator frequency
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Coupling constant of the singular term
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub g: f64,
    /// Speed of light, or `inf` for the non-relativistic model
    #[arg(long, default_value = "1")]
    pub c: LightSpeed,
    /// Reduced Planck constant
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    /// Radial quantum numbers, `a..b` (inclusive) or a single value
    #[arg(long, default_value = "0..3")]
    pub n: IndexRange,
    /// Orbital quantum numbers, `a..b` (inclusive) or a single value
    #[arg(long, default_value = "0..2")]
    pub l: IndexRange,
    #[arg(long, allow_negative_numbers = true)]
    pub rho_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    pub points: Option<usize>,
    /// Logarithmic instead of linear grid spacing
    #[arg(long)]
    pub log_grid: bool,
    /// Pass threshold for verification commands
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Output file; the table goes to stdout and the summary to stderr when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct QuadArgs {
    /// Initial number of quadrature nodes (16 per panel)
    #[arg(long, default_value_t = 1024)]
    pub nodes: usize,
    /// Use exactly the given range and node count instead of adaptive refinement
    #[arg(long)]
    pub fixed: bool,
}

#[derive(Args, Debug, Clone)]
pub struct LimitArgs {
    /// Comma-separated values of mc²/ħω
    #[arg(long, default_value = "100,1000,10000")]
    pub mu: FloatList,
}

#[derive(Args, Debug, Clone)]
pub struct CouplingGrid {
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub g_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub g_max: f64,
}

#[derive(Args, Debug, Clone)]
pub struct PlaneWaveArgs {
    /// Momentum vector `x,y,z`
    #[arg(long, default_value = "1,0,0", allow_negative_numbers = true)]
    pub p: FloatList,
    /// Position vector `x,y,z`
    #[arg(long, default_value = "0.5,0.8660254037844386,0", allow_negative_numbers = true)]
    pub r: FloatList,
    /// Comma-separated speeds of light
    #[arg(long, default_value = "10,100,1000")]
    pub c_values: FloatList,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A finite positive speed of light or the non-relativistic limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LightSpeed {
    Finite(f64),
    Infinite,
}

impl FromStr for LightSpeed {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "Inf" => Ok(LightSpeed::Infinite),
            t => t
                .parse::<f64>()
                .map(LightSpeed::Finite)
                .map_err(|e| format!("invalid speed of light `{t}`: {e}")),
        }
    }
}

impl Serialize for LightSpeed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LightSpeed::Finite(c) => s.serialize_f64(*c),
            LightSpeed::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Inclusive range `a..b`, also written `a..=b` or as a single value.
/// Kept unvalidated at parse time so an empty range is reported as a config error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexRange {
    pub start: u32,
    pub end: u32,
}

impl IndexRange {
    pub fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.start..=self.end
    }

    pub fn is_empty(self) -> bool {
        self.end < self.start
    }
}

impl FromStr for IndexRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("invalid index `{t}` in `{s}`: {e}"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(Self {
                start: num(a)?,
                end: num(b.strip_prefix('=').unwrap_or(b))?,
            }),
            None => {
                let v = num(s)?;
                Ok(Self { start: v, end: v })
            }
        }
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("invalid number `{t}`: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(FloatList)
    }
}

/// Why a command did not succeed, mapped one-to-one onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Regime(String),
}

impl From<singular_osc::Error> for Failure {
    fn from(e: singular_osc::Error) -> Self {
        match e {
            singular_osc::Error::Regime { .. } => Failure::Regime(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

/// Result of a command that ran to completion.
pub struct Outcome {
    pub table: Table,
    pub results: Map<String, Value>,
    pub passed: bool,
}

fn summary_path(out: &std::path::Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

fn emit(common: &Common, command: &str, config: Value, outcome: Result<Outcome, Failure>) -> ExitCode {
    let (status, code, mut results) = match &outcome {
        Ok(o) if o.passed => ("ok", 0, o.results.clone()),
        Ok(o) => ("verification_failed", 1, o.results.clone()),
        Err(Failure::Config(msg)) => ("config_error", 2, error_results(msg)),
        Err(Failure::Regime(msg)) => ("regime_error", 3, error_results(msg)),
    };

    let mut code = code;
    let mut status = status;
    let rows = match &outcome {
        Ok(o) => {
            let body = match common.format {
                Format::Csv => o.table.to_csv(),
                Format::Json => o.table.to_json(),
            };
            let written = match &common.out {
                Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                code = 2;
                status = "config_error";
                results.insert("error".into(), json!(msg));
            }
            o.table.rows.len()
        }
        Err(_) => 0,
    };
    results.insert("rows_written".into(), json!(rows));

    let summary = json!({
        "command": command,
        "config": config,
        "results": results,
        "status": status,
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(summary_path(path), text) {
                eprintln!("error: cannot write summary: {e}");
                code = 2;
            }
        }
        None => eprint!("{text}"),
    }
    if let Err(Failure::Config(msg) | Failure::Regime(msg)) = &outcome {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code)
}

fn error_results(msg: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("error".into(), json!(msg));
    m
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, (config, outcome)) = match &cli.command {
        Command::Spectrum(c) => ("spectrum", c, commands::spectrum(c)),
        Command::Wavefunction(c) => ("wavefunction", c, commands::wavefunction(c)),
        Command::Verify(c) => ("verify", c, commands::verify(c)),
        Command::Ortho { common, quad } => ("ortho", common, commands::ortho(common, quad)),
        Command::Limits { common, sweep } => ("limits", common, commands::limits(common, sweep)),
        Command::Figure1 { common, coupling } => ("figure1", common, commands::figure1(common, coupling)),
        Command::Planewave { common, wave } => ("planewave", common, commands::planewave(common, wave)),
    };
    emit(common, name, config, outcome)
}
