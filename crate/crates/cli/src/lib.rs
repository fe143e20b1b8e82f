//! The `tdm` command line: each subcommand reads text inputs, runs one check or
//! construction and returns a line-oriented `key: value` report.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::{Outcome, Report};

/// Default seed of the randomized property suites.
pub const DEFAULT_SEED: u64 = 2024;

/// Cases per randomized property suite.
pub const SUITE_CASES: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "tdm", version, about = "Matroid circuit axioms, 2-sum decompositions, rays of matroids and the doubled binary tree")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the circuit axioms of a family, or the hybrid axioms when cocircuits are given.
    CheckAxioms(CapArgs),
    /// Write the dual matroid.
    Dualize(CapArgs),
    /// Contract and delete the `contract` and `delete` fields of the input.
    Minorize(IoArgs),
    /// Canonical 2-sum decomposition of a matroid.
    Decompose(CapArgs),
    /// Glue a tree of matroids; with a second input, compare against that matroid.
    Glue(GlueArgs),
    /// Torsos of the canonical decomposition, each with a minor witness.
    Torso(CapArgs),
    /// Precircuits and Ψ-circuits of a tree of matroids.
    Precircuit(IoArgs),
    /// Validity and niceness of a periodic ray of matroids.
    RayValidate(IoArgs),
    /// Decide ≃ between two prolonged objects on a ray.
    RayEquiv(EquivArgs),
    /// Membership of a prolonged object in Φ or Φ*.
    RayMember(MemberArgs),
    /// Binary characterisation report for M_Φ on the ray of K4s.
    QReport(QReportArgs),
    /// Shape of the decomposition of the doubled binary tree, the K4 remark and τ-legal bonds.
    WVerify(WVerifyArgs),
    /// Decompose/glue and text round trips over the fixtures, plus the randomized ray suites.
    RoundtripSuite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct IoArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Largest ground set for exhaustive operations.
    #[arg(long, default_value_t = tdm_core::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct GlueArgs {
    /// The tree, then optionally the matroid it should glue to.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    /// The ray, then the two objects.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Steps of the bounded chain search run alongside the exact decision.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Longest cycle of the objects sampled by the chain search.
    #[arg(long, default_value_t = 3)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    /// The ray, then the object.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub phi: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QReportArgs {
    #[arg(long)]
    pub phi: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct WVerifyArgs {
    #[arg(long, default_value_t = tdm_wexample::graph::DEFAULT_DEPTH_CAP)]
    pub depth: usize,
    #[arg(long)]
    pub tau: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest ground set for the fixture decompositions.
    #[arg(long, default_value_t = tdm_core::DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: tdm_core::text::ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Kernel(#[from] tdm_core::KernelError),
    #[error(transparent)]
    Decomp(#[from] tdm_decomp::DecompError),
    #[error(transparent)]
    Glue(#[from] tdm_treeglue::GlueError),
    #[error(transparent)]
    Ray(#[from] tdm_raylab::RayError),
    #[error(transparent)]
    W(#[from] tdm_wexample::WError),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Runs one command. Errors are input errors (exit 2); a failed property is an
/// [`Outcome`] that did not pass (exit 1).
pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::CheckAxioms(a) => commands::check_axioms(&a.input, a.cap),
        Command::Dualize(a) => commands::dualize(&a.input, a.cap),
        Command::Minorize(a) => commands::minorize(&a.input),
        Command::Decompose(a) => commands::decompose(&a.input, a.cap),
        Command::Glue(a) => commands::glue(inputs(&a.input, 1..=2, "a tree and optionally a matroid")?),
        Command::Torso(a) => commands::torso(&a.input, a.cap),
        Command::Precircuit(a) => commands::precircuit(&a.input),
        Command::RayValidate(a) => commands::ray_validate(&a.input),
        Command::RayEquiv(a) => commands::ray_equiv(inputs(&a.input, 3..=3, "a ray and two objects")?, a.depth, a.cap),
        Command::RayMember(a) => commands::ray_member(inputs(&a.input, 2..=2, "a ray and an object")?, &a.phi),
        Command::QReport(a) => commands::q_report(&a.phi, a.depth),
        Command::WVerify(a) => commands::w_verify(a.depth, a.tau.as_deref()),
        Command::RoundtripSuite(a) => commands::roundtrip_suite(a.seed, a.cap),
    }
}

fn inputs<'a>(given: &'a [PathBuf], allowed: std::ops::RangeInclusive<usize>, what: &str) -> Result<&'a [PathBuf]> {
    if allowed.contains(&given.len()) {
        Ok(given)
    } else {
        Err(CliError::Usage(format!("expected {what} as repeated --input, got {} paths", given.len())))
    }
}

impl Command {
    pub fn output(&self) -> Option<&std::path::Path> {
        let out = match self {
            Command::CheckAxioms(a) | Command::Dualize(a) | Command::Decompose(a) | Command::Torso(a) => &a.output,
            Command::Minorize(a) | Command::Precircuit(a) | Command::RayValidate(a) => &a.output,
            Command::Glue(a) => &a.output,
            Command::RayEquiv(a) => &a.output,
            Command::RayMember(a) => &a.output,
            Command::QReport(a) => &a.output,
            Command::WVerify(a) => &a.output,
            Command::RoundtripSuite(a) => &a.output,
        };
        out.as_deref()
    }
}
