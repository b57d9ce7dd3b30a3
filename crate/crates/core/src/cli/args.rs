use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::dynamics::DefectDynamics;

#[derive(Parser, Debug, Serialize)]
#[command(name = "topobound", version, about = "Stabilizer-code experiments on periodic lattices")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Code parameters and distances.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Region queries.
    #[command(subcommand)]
    Region(RegionCommand),
    /// Clean a logical operator off a cube.
    Clean(CleanArgs),
    /// Correctability of every cube, by size.
    #[command(name = "lemma1-sweep")]
    Lemma1Sweep(SweepArgs),
    /// Light cone of the staircase encoder against the far region.
    EncodeLightcone(LightconeArgs),
    /// Classical defect dynamics Monte Carlo.
    PrepDissipative(DissipativeArgs),
    /// Entropic uncertainty of random ground states.
    Uncertainty(UncertaintyArgs),
    /// Correlations between two separated strip operators.
    PrepCorrelations(CorrelationArgs),
    /// Aggregate CSV outputs.
    Summary(SummaryArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeCommand {
    Info(CodeArgs),
    Distance(CodeArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionCommand {
    Correctable(RegionArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeName {
    Toric2d,
    Toric3d,
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeName::Toric2d => "toric2d",
            CodeName::Toric3d => "toric3d",
        })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CodeArgs {
    #[arg(long, value_enum, conflicts_with = "code_file")]
    pub code: Option<CodeName>,
    /// Single size or inclusive range, e.g. `4` or `3..6`.
    #[arg(long = "L")]
    pub l: Option<SizeRange>,
    #[arg(long)]
    pub code_file: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct RegionArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Comma-separated qubit indices.
    #[arg(long)]
    pub region: String,
}

#[derive(Args, Debug, Serialize)]
pub struct CleanArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// `X1`, `Z1`, `X2`, ... or a Pauli string.
    #[arg(long)]
    pub logical: String,
    /// Cell coordinates, comma-separated.
    #[arg(long)]
    pub cube_center: String,
    #[arg(long)]
    pub cube_size: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub code: CodeArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EncoderName {
    Staircase,
}

#[derive(Args, Debug, Serialize)]
pub struct LightconeArgs {
    #[arg(long, value_enum, default_value_t = CodeName::Toric2d)]
    pub code: CodeName,
    #[arg(long = "L")]
    pub l: SizeRange,
    #[arg(long, value_enum, default_value_t = EncoderName::Staircase)]
    pub encoder: EncoderName,
    #[arg(long, default_value_t = 1.0)]
    pub depth_fraction: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct DissipativeArgs {
    #[arg(long = "L")]
    pub l: SizeRange,
    #[arg(long, value_parser = parse_dynamics)]
    pub dynamics: DefectDynamics,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

fn parse_dynamics(s: &str) -> Result<DefectDynamics, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Args, Debug, Serialize)]
pub struct UncertaintyArgs {
    #[arg(long, value_enum, default_value_t = CodeName::Toric2d)]
    pub code: CodeName,
    #[arg(long = "L", default_value = "2")]
    pub l: SizeRange,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CorrelationArgs {
    #[arg(long = "L")]
    pub l: SizeRange,
    #[arg(long, value_enum, default_value_t = EncoderName::Staircase)]
    pub encoder: EncoderName,
    #[arg(long, default_value_t = 1.0)]
    pub depth_fraction: f64,
    #[arg(long, default_value_t = 0.5)]
    pub separation_fraction: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SummaryArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
}

/// Inclusive list of system sizes: `4`, `3..6`, `3..=6` or `8,16,32`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRange(pub Vec<usize>);

impl SizeRange {
    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid size {t:?}"));
        let values: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (num(a)?, num(b.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            (lo..=hi).collect()
        } else {
            s.split(',').map(num).collect::<Result<_, _>>()?
        };
        if values.is_empty() {
            return Err("no sizes given".into());
        }
        Ok(SizeRange(values))
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.0;
        let contiguous = v.windows(2).all(|w| w[1] == w[0] + 1);
        if v.len() > 1 && contiguous {
            write!(f, "{}..{}", v[0], v[v.len() - 1])
        } else {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl Serialize for SizeRange {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
