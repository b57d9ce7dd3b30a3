//! The `topobound` command line.

mod args;
mod output;
mod summary;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use rand::Rng;
use serde::Serialize;

pub use args::{Cli, Command, Format, SizeRange};
pub use output::{render_csv, render_json, Header};
pub use summary::summarize;

use crate::algebra::PauliOp;
use crate::code::{build_toric_2d, build_toric_3d, distance, load_code, StabilizerCode};
use crate::correctability::{clean, is_correctable, lemma1_sweep};
use crate::dynamics::{dissipative_prep_mc, encoder_toric_2d_at, Theorem1Setup};
use crate::error::Error;
use crate::lattice::Region;
use crate::rng::trial_rng;
use crate::uncertainty::{theorem2_experiment, toric_strips, uncertainty_samples, x_eigenstate_prep};
use args::{CodeArgs, CodeCommand, CodeName, RegionCommand};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_UNKNOWN_SUBCOMMAND: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Lib(Error::Budget(_) | Error::DistanceInfeasible(_)) => EXIT_BUDGET,
            CliError::Lib(Error::Contract(_) | Error::Setup(_) | Error::Parse(_) | Error::Validation(_)) => {
                EXIT_INVALID
            }
            CliError::Lib(_) => EXIT_OTHER,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid parameters: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Invalid(msg.into()))
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_UNKNOWN_SUBCOMMAND,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(text) => match write_output(&cli, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_OTHER
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// Runs a parsed command and returns the rendered output.
pub fn run(cli: &Cli) -> CliResult<String> {
    let config = serde_json::to_value(cli).map_err(Error::from)?;
    let header = Header::new(config, !cli.no_timestamp);
    let emit = |default: Format, rows: &dyn ErasedRows| -> CliResult<String> {
        match cli.format.unwrap_or(default) {
            Format::Csv => rows.csv(&header),
            Format::Json => rows.json(&header),
        }
    };
    match &cli.command {
        Command::Code(CodeCommand::Info(a)) => {
            let mut rows = Vec::new();
            for (name, l, code) in load_codes(a)? {
                let (d, method) = match distance(&code) {
                    Ok(c) => (Some(c.d), c.method),
                    Err(Error::DistanceInfeasible(_)) => (None, "infeasible".to_string()),
                    Err(e) => return Err(e.into()),
                };
                rows.push(CodeInfo {
                    code: name,
                    l,
                    n: code.n(),
                    k: code.k(),
                    d,
                    xi: code.xi(),
                    distance_method: method,
                });
            }
            emit(Format::Json, &Rows(rows))
        }
        Command::Code(CodeCommand::Distance(a)) => {
            let mut rows = Vec::new();
            for (name, l, code) in load_codes(a)? {
                let c = distance(&code)?;
                rows.push(DistanceRow {
                    code: name,
                    l,
                    d: c.d,
                    witness: c.witness.to_string(),
                    method: c.method,
                    candidates: c.candidates as u64,
                });
            }
            emit(Format::Json, &Rows(rows))
        }
        Command::Region(RegionCommand::Correctable(a)) => {
            let (name, l, code) = single_code(&a.code)?;
            let region = parse_region(&a.region)?;
            let correctable = is_correctable(&code, &region)?;
            let row = RegionRow { code: name, l, region: region_text(&region), size: region.len(), correctable };
            emit(Format::Json, &Rows(vec![row]))
        }
        Command::Clean(a) => {
            let (name, l, code) = single_code(&a.code)?;
            let p = parse_logical(&code, &a.logical)?;
            let center = parse_ints(&a.cube_center)?;
            let cube = code.lattice().cube(&center, a.cube_size)?;
            let r = clean(&code, &p, &cube)?;
            let row = CleanRow {
                code: name,
                l,
                region: region_text(&cube),
                correctable: is_correctable(&code, &cube)?,
                original: r.original.to_string(),
                cleaned: r.cleaned.to_string(),
                certificate: r.stabilizer_certificate.iter_ones().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            };
            emit(Format::Json, &Rows(vec![row]))
        }
        Command::Lemma1Sweep(a) => {
            let mut rows = Vec::new();
            for (name, l, code) in load_codes(&a.code)? {
                let cert = distance(&code)?;
                let sweep = lemma1_sweep(&code, &cert)?;
                for r in sweep.rows {
                    rows.push(SweepCsvRow {
                        code: name.clone(),
                        l,
                        r: r.r,
                        all_correctable: r.all_correctable,
                        num_cubes_tested: r.num_cubes_tested,
                        r_star: sweep.r_star,
                    });
                }
            }
            emit(Format::Csv, &Rows(rows))
        }
        Command::EncodeLightcone(a) => {
            check_fraction("depth-fraction", a.depth_fraction)?;
            if a.code != CodeName::Toric2d {
                return invalid("the staircase encoder exists for toric2d only");
            }
            let mut rows = Vec::new();
            for (i, &l) in a.l.values().iter().enumerate() {
                let code = build_toric_2d(l)?;
                let mut rng = trial_rng(cli.seed, i as u64);
                let origin = (rng.gen_range(0..l as i64), rng.gen_range(0..l as i64));
                let enc = encoder_toric_2d_at(l, origin)?;
                let setup = Theorem1Setup::new(&code, &enc.circuit, &enc.inputs())?;
                let depth = (a.depth_fraction * enc.circuit.depth() as f64).round() as usize;
                let report = setup.evaluate(&code, &enc.circuit.truncated(depth))?;
                if !report.dichotomy_holds() {
                    return Err(Error::Contract(format!("light-cone dichotomy failed at L = {l}")).into());
                }
                rows.push(LightconeRow {
                    l,
                    depth: report.depth,
                    r: report.cube_size,
                    d_ba: report.d_ba,
                    cone_hits_a: report.cone_hits_a,
                    d_full: report.d_full,
                    d_loc: report.d_loc,
                });
            }
            emit(Format::Csv, &Rows(rows))
        }
        Command::PrepDissipative(a) => {
            if a.trials == 0 {
                return invalid("--trials must be at least 1");
            }
            let mut rows = Vec::new();
            for &l in a.l.values() {
                if l < 2 {
                    return invalid("--L must be at least 2");
                }
                rows.extend(dissipative_prep_mc(l, a.dynamics, a.trials, cli.seed)?);
            }
            emit(Format::Csv, &Rows(rows))
        }
        Command::Uncertainty(a) => {
            let mut rows = Vec::new();
            for &l in a.l.values() {
                let code = builtin(a.code, l)?;
                rows.extend(uncertainty_samples(&code, a.samples, cli.seed)?);
            }
            emit(Format::Csv, &Rows(rows))
        }
        Command::PrepCorrelations(a) => {
            check_fraction("depth-fraction", a.depth_fraction)?;
            check_fraction("separation-fraction", a.separation_fraction)?;
            let mut rows = Vec::new();
            for (i, &l) in a.l.values().iter().enumerate() {
                let li = l as i64;
                let offset = (a.separation_fraction * l as f64).round() as i64;
                if offset < 1 || offset >= li {
                    return invalid(format!(
                        "separation fraction {} gives no distinct strip at L = {l}",
                        a.separation_fraction
                    ));
                }
                let code = build_toric_2d(l)?;
                let mut rng = trial_rng(cli.seed, i as u64);
                let origin = (rng.gen_range(0..li), rng.gen_range(0..li));
                let column = rng.gen_range(0..li);
                let enc = encoder_toric_2d_at(l, origin)?;
                let prep = x_eigenstate_prep(&code, &enc)?;
                let depth = (a.depth_fraction * prep.depth() as f64).round() as usize;
                let (z1, z2) = toric_strips(l, column, offset);
                let separation = 2 * offset.min(li - offset);
                let r = theorem2_experiment(&code, &prep.truncated(depth), &z1, &z2, separation)?;
                rows.push(CorrelationRow {
                    l,
                    depth: r.depth,
                    separation: r.separation,
                    cones_disjoint: r.cones_disjoint,
                    corr: r.corr,
                    h1: r.h1,
                    h2: r.h2,
                    h_joint: r.h_joint,
                    mutual_info: r.mutual_info,
                });
            }
            emit(Format::Csv, &Rows(rows))
        }
        Command::Summary(a) => {
            let mut text = String::new();
            for p in &a.paths {
                text.push_str(&summarize(p)?);
            }
            Ok(text)
        }
    }
}

fn check_fraction(name: &str, f: f64) -> CliResult<()> {
    if !(0.0..=1.0).contains(&f) {
        return invalid(format!("--{name} must lie in [0, 1], got {f}"));
    }
    Ok(())
}

fn builtin(name: CodeName, l: usize) -> crate::Result<StabilizerCode> {
    match name {
        CodeName::Toric2d => build_toric_2d(l),
        CodeName::Toric3d => build_toric_3d(l),
    }
}

fn load_codes(a: &CodeArgs) -> CliResult<Vec<(String, Option<usize>, StabilizerCode)>> {
    match (&a.code, &a.code_file, &a.l) {
        (None, Some(path), _) => {
            let code = load_code(path)?;
            Ok(vec![(code.name().to_string(), None, code)])
        }
        (Some(name), None, Some(ls)) => {
            ls.values().iter().map(|&l| Ok((name.to_string(), Some(l), builtin(*name, l)?))).collect()
        }
        (Some(_), None, None) => invalid("--L is required with --code"),
        _ => invalid("give either --code with --L or --code-file"),
    }
}

fn single_code(a: &CodeArgs) -> CliResult<(String, Option<usize>, StabilizerCode)> {
    let mut codes = load_codes(a)?;
    if codes.len() != 1 {
        return invalid("this command takes a single --L value");
    }
    Ok(codes.remove(0))
}

fn parse_ints(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().or_else(|_| invalid(format!("invalid integer {s:?}"))))
        .collect()
}

fn parse_region(text: &str) -> CliResult<Region> {
    let sites = parse_ints(text)?;
    if sites.iter().any(|&s| s < 0) {
        return invalid("region sites must be non-negative");
    }
    Ok(Region::new(sites.into_iter().map(|s| s as usize)))
}

fn region_text(r: &Region) -> String {
    r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// `X1`, `Z2`, ... name logical basis elements; anything else is read as a Pauli string.
fn parse_logical(code: &StabilizerCode, text: &str) -> CliResult<PauliOp> {
    let mut chars = text.chars();
    if let (Some(letter @ ('X' | 'Z')), Ok(i)) = (chars.next(), chars.as_str().parse::<usize>()) {
        let Some(pair) = i.checked_sub(1).and_then(|i| code.logical_basis().get(i)) else {
            return invalid(format!("logical {text} does not exist for k = {}", code.k()));
        };
        return Ok(if letter == 'X' { pair.x.clone() } else { pair.z.clone() });
    }
    text.parse::<PauliOp>().map_err(|e| CliError::Invalid(e.to_string()))
}

trait ErasedRows {
    fn csv(&self, header: &Header) -> CliResult<String>;
    fn json(&self, header: &Header) -> CliResult<String>;
}

struct Rows<T>(Vec<T>);

impl<T: Serialize> ErasedRows for Rows<T> {
    fn csv(&self, header: &Header) -> CliResult<String> {
        Ok(render_csv(header, &self.0)?)
    }

    fn json(&self, header: &Header) -> CliResult<String> {
        Ok(match self.0.as_slice() {
            [one] => render_json(header, one)?,
            many => render_json(header, &many)?,
        })
    }
}

#[derive(Serialize)]
struct CodeInfo {
    code: String,
    #[serde(rename = "L")]
    l: Option<usize>,
    n: usize,
    k: usize,
    d: Option<usize>,
    xi: i64,
    distance_method: String,
}

#[derive(Serialize)]
struct DistanceRow {
    code: String,
    #[serde(rename = "L")]
    l: Option<usize>,
    d: usize,
    witness: String,
    method: String,
    candidates: u64,
}

#[derive(Serialize)]
struct RegionRow {
    code: String,
    #[serde(rename = "L")]
    l: Option<usize>,
    region: String,
    size: usize,
    correctable: bool,
}

#[derive(Serialize)]
struct CleanRow {
    code: String,
    #[serde(rename = "L")]
    l: Option<usize>,
    region: String,
    correctable: bool,
    original: String,
    cleaned: String,
    certificate: String,
}

#[derive(Serialize)]
struct SweepCsvRow {
    code: String,
    #[serde(rename = "L")]
    l: Option<usize>,
    #[serde(rename = "R")]
    r: i64,
    all_correctable: bool,
    num_cubes_tested: usize,
    #[serde(rename = "R_star")]
    r_star: i64,
}

#[derive(Serialize)]
struct LightconeRow {
    #[serde(rename = "L")]
    l: usize,
    depth: usize,
    #[serde(rename = "R")]
    r: i64,
    #[serde(rename = "dBA")]
    d_ba: i64,
    #[serde(rename = "cone_hits_A")]
    cone_hits_a: bool,
    #[serde(rename = "D_full")]
    d_full: i8,
    #[serde(rename = "D_loc")]
    d_loc: i8,
}

#[derive(Serialize)]
struct CorrelationRow {
    #[serde(rename = "L")]
    l: usize,
    depth: usize,
    separation: i64,
    cones_disjoint: bool,
    corr: f64,
    #[serde(rename = "H1")]
    h1: f64,
    #[serde(rename = "H2")]
    h2: f64,
    #[serde(rename = "Hjoint")]
    h_joint: f64,
    mutual_info: f64,
}
