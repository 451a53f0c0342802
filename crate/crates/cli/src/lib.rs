//! Command-line driver for `cyb-core`: single-spec reports, family
//! enumeration, Kahler cone data, contraction types and discriminant octics.
//!
//! [`execute`] runs a [`RunConfig`] to completion and returns the exit code
//! together with what would go to stdout and stderr, so the binary is a thin
//! wrapper and tests can drive the same code path in-process.

pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use cyb_core::chow::{Base, BundleSpec};
use cyb_core::discriminant::{
    base_locus_expected, build_discriminant, sample_section, section_degrees, singularity_witness,
};
use cyb_core::exact::{int, Rational};
use cyb_core::invariants::{fiber_count, invariants};
use cyb_core::kahler::{boundary_rays, classify_contraction_p1};

use report::{
    rows_to_csv, ClassifyReport, DiscriminantReport, EnumerateReport, InvariantsReport,
    KaehlerCommandReport, LabeledWitness, Report, ReportRow, SpecEcho,
};

/// Environment variable capping the enumeration thread pool.
pub const THREADS_ENV: &str = "CYB_THREADS";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    P3,
    P1,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Base {
        match b {
            BaseArg::P3 => Base::P3,
            BaseArg::P1 => Base::P1,
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Invariants of one bundle, every closed form checked against the Chow ring
    Invariants,
    /// One report row per normalized split bundle up to --max-degree
    Enumerate,
    /// Cubic form, rationality verdict, Kahler cone rays and c2 values
    Kaehler,
    /// Second contraction for a rank-4 bundle over P^1
    Classify,
    /// Sampled section, its discriminant octic and singularity witnesses
    Discriminant,
}

#[derive(Clone, Debug, Args)]
pub struct Options {
    /// Base of the projective bundle (classify defaults to p1, everything else to p3)
    #[arg(long, value_enum, global = true)]
    pub base: Option<BaseArg>,
    /// Splitting degrees, comma separated: 2 for p3, 4 for p1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, global = true)]
    pub degrees: Option<Vec<i64>>,
    /// Largest degree visited by enumerate
    #[arg(long, default_value_t = 4, global = true)]
    pub max_degree: i64,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for discriminant sampling
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Coefficient bound for discriminant sampling
    #[arg(long, default_value_t = 1, global = true)]
    pub bound: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "cyb",
    version,
    about = "Calabi-Yau threefolds in P^1-bundles: invariants and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

/// Fully resolved run parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub base: Base,
    pub degrees: Option<Vec<i64>>,
    pub max_degree: i64,
    pub format: Format,
    pub seed: u64,
    pub bound: u64,
    pub out: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let o = cli.options;
        let default_base = match cli.command {
            Command::Classify => Base::P1,
            _ => Base::P3,
        };
        RunConfig {
            command: cli.command,
            base: o.base.map(Base::from).unwrap_or(default_base),
            degrees: o.degrees,
            max_degree: o.max_degree,
            format: o.format,
            seed: o.seed,
            bound: o.bound,
            out: o.out,
        }
    }
}

impl RunConfig {
    pub fn new(command: Command, base: Base, degrees: &[i64]) -> Self {
        RunConfig {
            command,
            base,
            degrees: Some(degrees.to_vec()),
            max_degree: 4,
            format: Format::Json,
            seed: 0,
            bound: 1,
            out: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cyb_core::Error),
    #[error("invalid arguments: {0}")]
    Config(String),
    #[error("closed form disagrees with oracle in {0} row(s)")]
    OracleFailed(usize),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 2 bad input, 3 oracle mismatch, 4 inadmissible, 5 refused (Picard
    /// number not 2), 1 anything else.
    pub fn exit_code(&self) -> i32 {
        use cyb_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::InvalidSpec(_) | E::WrongCase { .. } | E::NonSplit(_)) => 2,
            CliError::Core(E::DegreeMismatch { .. } | E::ZeroPoint) => 2,
            CliError::Core(E::OracleMismatch { .. } | E::NotIntegral { .. }) => 3,
            CliError::OracleFailed(_) => 3,
            CliError::Core(E::Inadmissible { .. } | E::GammaTooLarge(_)) => 4,
            CliError::Core(E::PicardNotTwo { .. } | E::NotPositive { .. }) => 5,
            _ => 1,
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.reason(),
            CliError::Config(_) => "invalid_arguments",
            CliError::OracleFailed(_) => "oracle_mismatch",
            CliError::Io(_) => "io",
            CliError::Csv(_) => "csv",
            CliError::Json(_) => "json",
            CliError::Pool(_) => "thread_pool",
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Repr<'a> {
            schema: u32,
            error: &'a str,
            exit_code: i32,
            message: String,
        }
        serde_json::to_string(&Repr {
            schema: report::SCHEMA,
            error: self.reason(),
            exit_code: self.exit_code(),
            message: self.to_string(),
        })
        .expect("error record serializes")
    }
}

/// Result of a run: what to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn spec_from(cfg: &RunConfig) -> Result<(BundleSpec, Vec<i64>), CliError> {
    let degrees = cfg
        .degrees
        .clone()
        .ok_or_else(|| CliError::Config("--degrees is required".into()))?;
    if degrees.len() != cfg.base.rank() {
        return Err(CliError::Config(format!(
            "--base {} takes {} degrees, got {}",
            cfg.base.name().to_lowercase(),
            cfg.base.rank(),
            degrees.len()
        )));
    }
    Ok((BundleSpec::split(cfg.base, &degrees)?, degrees))
}

/// Row for one spec. Kahler and contraction data are attached only when the
/// Picard number is 2.
pub fn report_row(spec: &BundleSpec) -> Result<ReportRow, CliError> {
    let inv = invariants(spec)?;
    let fibers = match spec.base() {
        Base::P3 => {
            let f = fiber_count(spec)?;
            Some(f.chern_formula == f.closed_form && f.bezout.is_none_or(|b| b == f.closed_form))
        }
        Base::P1 => None,
    };
    let rho_two = inv.picard.is_some_and(|p| p.value == 2);
    let kahler = if rho_two {
        Some(boundary_rays(spec)?)
    } else {
        None
    };
    let contraction = match spec.base() {
        Base::P1 if rho_two => Some(classify_contraction_p1(spec)?),
        _ => None,
    };
    Ok(ReportRow::new(
        &inv,
        fibers,
        kahler.as_ref(),
        contraction.as_ref(),
    ))
}

/// Normalized split bundles with all degrees in `0..=max_degree`, in
/// lexicographic order. Over `P^3` the inadmissible ones are dropped.
pub fn enumerate_specs(base: Base, max_degree: i64) -> Vec<BundleSpec> {
    let mut out = Vec::new();
    match base {
        Base::P3 => {
            for b in 0..=max_degree.min(4) {
                out.push(BundleSpec::split(base, &[0, b]).expect("rank 2"));
            }
        }
        Base::P1 => {
            for a1 in 0..=max_degree {
                for a2 in a1..=max_degree {
                    for a3 in a2..=max_degree {
                        out.push(BundleSpec::split(base, &[0, a1, a2, a3]).expect("rank 4"));
                    }
                }
            }
        }
    }
    out
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn enumerate(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.max_degree < 0 {
        return Err(CliError::Config("--max-degree must be nonnegative".into()));
    }
    let specs = enumerate_specs(cfg.base, cfg.max_degree);
    let rows = thread_pool()?.install(|| {
        specs
            .par_iter()
            .map(report_row)
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(Report::Enumerate(EnumerateReport {
        base: cfg.base,
        max_degree: cfg.max_degree,
        rows,
    }))
}

/// Points at which the sampled section is evaluated as is.
fn sample_points() -> [[Rational; 4]; 2] {
    [[1, 0, 0, 0], [1, 1, 1, 1]].map(|p| p.map(int))
}

/// Point at which a section is forced to vanish.
fn constructed_point() -> [Rational; 4] {
    [1, 2, -1, 3].map(int)
}

fn discriminant(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.base != Base::P3 {
        return Err(CliError::Config("discriminant needs --base p3".into()));
    }
    let (spec, input) = spec_from(cfg)?;
    let section_degrees = section_degrees(&spec)?;
    let q = sample_section(&spec, cfg.seed, cfg.bound)?;
    let mut witnesses = Vec::new();
    for p in sample_points() {
        witnesses.push(LabeledWitness {
            section: "sampled",
            record: singularity_witness(&q, &p)?,
        });
    }
    let p = constructed_point();
    witnesses.push(LabeledWitness {
        section: "constructed",
        record: singularity_witness(&q.vanishing_at(&p)?, &p)?,
    });
    Ok(Report::Discriminant(DiscriminantReport {
        spec: SpecEcho::new(&spec, &input),
        seed: cfg.seed,
        bound: cfg.bound,
        section_degrees,
        degenerate: q.is_zero(),
        base_locus_expected: base_locus_expected(&spec)?,
        octic: build_discriminant(&q),
        witnesses,
    }))
}

/// Compute the report for `cfg`.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Invariants => {
            let (spec, input) = spec_from(cfg)?;
            let row = report_row(&spec)?;
            Ok(Report::Invariants(InvariantsReport {
                spec: SpecEcho::new(&spec, &input),
                invariants: invariants(&spec)?,
                row,
            }))
        }
        Command::Enumerate => enumerate(cfg),
        Command::Kaehler => {
            let (spec, input) = spec_from(cfg)?;
            Ok(Report::Kaehler(KaehlerCommandReport {
                spec: SpecEcho::new(&spec, &input),
                kahler: boundary_rays(&spec)?,
            }))
        }
        Command::Classify => {
            if cfg.base != Base::P1 {
                return Err(CliError::Config("classify needs --base p1".into()));
            }
            let (spec, input) = spec_from(cfg)?;
            Ok(Report::Classify(ClassifyReport {
                spec: SpecEcho::new(&spec, &input),
                contraction: classify_contraction_p1(&spec)?,
            }))
        }
        Command::Discriminant => discriminant(cfg),
    }
}

/// Render `report` in the requested format.
pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => report.to_json()?,
        Format::Text => report.to_text(),
        Format::Csv => match report.rows() {
            Some(rows) => rows_to_csv(rows)?,
            None => {
                return Err(CliError::Config(format!(
                    "{} has no tabular form; use --format json or text",
                    report.command()
                )))
            }
        },
    })
}

fn octic_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".octic");
    PathBuf::from(s)
}

fn write_outputs(cfg: &RunConfig, report: &Report, rendered: &str) -> Result<String, CliError> {
    let Some(out) = &cfg.out else {
        return Ok(rendered.to_string());
    };
    std::fs::write(out, rendered)?;
    if let Report::Discriminant(d) = report {
        std::fs::write(octic_path(out), format!("{}\n", d.octic.text()))?;
    }
    Ok(String::new())
}

/// Run, render and write; never panics on user input.
pub fn execute(cfg: &RunConfig) -> Outcome {
    let result = run(cfg).and_then(|report| {
        let rendered = render(&report, cfg.format)?;
        let stdout = write_outputs(cfg, &report, &rendered)?;
        Ok((report, stdout))
    });
    match result {
        Ok((report, stdout)) => {
            let failed = report
                .rows()
                .map(|rows| rows.iter().filter(|r| !r.oracle_ok).count())
                .unwrap_or(0);
            if failed > 0 {
                let e = CliError::OracleFailed(failed);
                Outcome {
                    exit_code: e.exit_code(),
                    stdout,
                    stderr: e.to_json() + "\n",
                }
            } else {
                Outcome {
                    exit_code: 0,
                    stdout,
                    stderr: String::new(),
                }
            }
        }
        Err(e) => Outcome {
            exit_code: e.exit_code(),
            stdout: String::new(),
            stderr: e.to_json() + "\n",
        },
    }
}
