//! Argument definitions and conversion into core types.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use duomode_core::{make_gaussian, Output, PhysicalConfig, Statistics, TwoParticleState, Vector};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "duomode", version, about = "Two-particle multimode detection: sweeps, checks and simulations")]
pub struct Cli {
    /// Write the table here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the centre separation or the detector position.
    Scan(ScanArgs),
    /// Run the inequality and property battery over random families.
    Verify(VerifyArgs),
    /// Directional limits of the fermion ratio as the two centres merge.
    Limits(LimitsArgs),
    /// Estimate the contrast from simulated detector counts.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// JSON (.json) or TOML (.toml) state description; overrides the inline flags.
    #[arg(long, value_name = "FILE")]
    pub state: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "boson")]
    pub statistics: StatisticsArg,

    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,

    /// Spatial dimension; inferred from the centres when omitted.
    #[arg(long)]
    pub dimension: Option<usize>,

    /// Common Gaussian width Q of f and g.
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,

    /// Centre of f, comma separated.
    #[arg(long, allow_hyphen_values = true, value_name = "VEC")]
    pub f_center: Option<String>,

    /// Centre of g, comma separated.
    #[arg(long, allow_hyphen_values = true, value_name = "VEC")]
    pub g_center: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatisticsArg {
    Boson,
    Fermion,
}

impl From<StatisticsArg> for Statistics {
    fn from(s: StatisticsArg) -> Self {
        match s {
            StatisticsArg::Boson => Statistics::Boson,
            StatisticsArg::Fermion => Statistics::Fermion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// Shift g by Δ·direction; detector fixed at --detector.
    Separation,
    /// Detector at t·direction; state fixed.
    Position,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub state: StateArgs,

    #[arg(long, value_enum, default_value = "separation")]
    pub sweep: SweepKind,

    /// Unit direction of the sweep; defaults to the first axis.
    #[arg(long, allow_hyphen_values = true, value_name = "VEC")]
    pub direction: Option<String>,

    /// Detector position for separation sweeps; defaults to the origin.
    #[arg(long, allow_hyphen_values = true, value_name = "VEC")]
    pub detector: Option<String>,

    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub start: f64,

    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0)]
    pub stop: f64,

    #[arg(long, default_value_t = 41)]
    pub steps: usize,

    /// Columns to emit, from P, P0, D, C, c_tilde, bound, slack.
    #[arg(long, default_value = "P,P0,D,C,c_tilde,bound,slack")]
    pub outputs: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub families: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Fermion pairs with larger overlap are skipped by the lower-bound check.
    #[arg(long, default_value_t = 0.999)]
    pub beta_cap: f64,

    #[arg(long, default_value_t = 1)]
    pub dimension: usize,

    /// Harness self-test: evaluate the fermion norm with the wrong sign.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LimitsArgs {
    /// Detector position; its length sets the dimension.
    #[arg(long, allow_hyphen_values = true, default_value = "2,0,0")]
    pub r: String,

    #[arg(long, default_value_t = 1.0)]
    pub q: f64,

    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,

    /// Unit directions separated by ';'. Defaults to every coordinate axis.
    #[arg(long, allow_hyphen_values = true)]
    pub directions: Option<String>,

    /// Approach distances in units of Q, comma separated.
    #[arg(long, default_value = "0.1,0.01,0.001")]
    pub t: String,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Detector bin centre; defaults to the origin.
    #[arg(long, allow_hyphen_values = true, value_name = "VEC")]
    pub bin_center: Option<String>,

    #[arg(long, default_value_t = 0.1)]
    pub half_width: f64,

    /// Events per run (three runs per replication).
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Independent replications, seeded seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub replications: usize,
}

pub fn parse_vector(text: &str, what: &str) -> Result<Vector, CliError> {
    let comps: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let comps = comps.map_err(|e| CliError::Usage(format!("{what}: cannot parse {text:?} as a vector: {e}")))?;
    if comps.iter().any(|c| !c.is_finite()) {
        return Err(CliError::Usage(format!("{what}: components must be finite")));
    }
    Vector::new(&comps).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

pub fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("{what}: cannot parse {s:?}: {e}")))
        })
        .collect()
}

pub fn parse_outputs(text: &str) -> Result<Vec<Output>, CliError> {
    text.split(',')
        .map(|s| s.parse::<Output>().map_err(|e| CliError::Usage(format!("--outputs: {e}"))))
        .collect()
}

fn read_state_file(path: &Path) -> Result<TwoParticleState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let toml = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("toml") => true,
        Some(ext) if ext.eq_ignore_ascii_case("json") => false,
        _ => {
            return Err(CliError::Usage(format!(
                "{}: state files must end in .json or .toml",
                path.display()
            )))
        }
    };
    TwoParticleState::from_text(&text, toml).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

impl StateArgs {
    pub fn build(&self) -> Result<TwoParticleState, CliError> {
        if let Some(path) = &self.state {
            return read_state_file(path);
        }
        let f = self.f_center.as_deref().map(|s| parse_vector(s, "--f-center")).transpose()?;
        let g = self.g_center.as_deref().map(|s| parse_vector(s, "--g-center")).transpose()?;
        let dim = self
            .dimension
            .or(f.map(|v| v.dim()))
            .or(g.map(|v| v.dim()))
            .unwrap_or(1);
        let config = PhysicalConfig::new(self.hbar, dim)?;
        let f = f.unwrap_or_else(|| Vector::zeros(dim));
        let g = g.unwrap_or_else(|| Vector::zeros(dim));
        let fd = make_gaussian(f, self.q, &config)?;
        let gd = make_gaussian(g, self.q, &config)?;
        Ok(TwoParticleState::new(fd, gd, self.statistics.into(), config)?)
    }
}
