mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use specdec_core::io::BaseChoice;
use specdec_core::spectrum::PrimalityNotion;
use specdec_core::Limits;

/// Spectra, radicals and direct-product decompositions of finite groups,
/// Smith normal forms, and p-prime ideals of finite rings.
#[derive(Parser)]
#[command(name = "specdec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Primality notion: intersection or quotient-domain.
    #[arg(long, default_value = "intersection", value_parser = parse_notion)]
    pub notion: PrimalityNotion,
    /// Enumeration cap for normal subgroups and spectra (overrides SPECDEC_MAX_ORDER).
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Emit one JSON object per line.
    #[arg(long)]
    pub json: bool,
    /// Cross-check results against brute-force oracles.
    #[arg(long)]
    pub oracle: bool,
    /// Seed for randomized batches.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Base for bare groups: trivial (no action) or identity (conjugation).
    #[arg(long, default_value = "trivial", value_parser = parse_base)]
    pub base: BaseChoice,
}

impl Common {
    pub fn limits(&self) -> Limits {
        let limits = Limits::from_env();
        match self.max_order {
            Some(cap) => limits.with_enumeration(cap),
            None => limits,
        }
    }
}

fn parse_notion(s: &str) -> Result<PrimalityNotion, String> {
    s.parse().map_err(|e: specdec_core::Error| e.to_string())
}

fn parse_base(s: &str) -> Result<BaseChoice, String> {
    s.parse().map_err(|e: specdec_core::Error| e.to_string())
}

#[derive(Args, Debug)]
pub struct Inputs {
    #[command(flatten)]
    pub common: Common,
    /// JSON files, `corpus:<max_order>` or `named:<spec>`.
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Basic structure of each group.
    Group(Inputs),
    /// Prime normal subgroups, radical and axiom checks.
    Spectrum(Inputs),
    /// Radical and radical ideals.
    Radical(Inputs),
    /// Direct-product decomposition from the spectrum.
    Decompose(Inputs),
    /// Classification of groups without divisors of zero.
    Marin(Inputs),
    /// Divisors of zero against local indecomposability.
    DomainCheck(Inputs),
    /// Smith normal form of integer matrices, or a randomized batch with --seed.
    Snf(SnfArgs),
    /// Prime-power ideals of Z containing (n), and a bounded p-prime check.
    Zspec(ZspecArgs),
    /// Ideals, p-prime ideals and closed-set identities of finite rings.
    Ring(Inputs),
    /// Topology identities and axiom instances for each group.
    Verify(VerifyArgs),
    /// List the curated corpus.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
pub struct SnfArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of random matrices when --seed is given.
    #[arg(long, default_value_t = 500)]
    pub batch: usize,
    /// Largest row and column count of random matrices.
    #[arg(long, default_value_t = 8)]
    pub max_dim: usize,
    /// Largest absolute entry of random matrices.
    #[arg(long, default_value_t = 1000)]
    pub max_entry: i64,
    /// Matrix files or inline JSON.
    pub inputs: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ZspecArgs {
    #[command(flatten)]
    pub common: Common,
    /// Window for the p-prime check of (n).
    #[arg(long)]
    pub bound: Option<i64>,
    #[arg(required = true)]
    pub values: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Run under both primality notions.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest group order to include.
    #[arg(value_name = "MAX_ORDER")]
    pub bound: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, json) = match cli.command {
        Command::Group(a) => (commands::group(&a), a.common.json),
        Command::Spectrum(a) => (commands::spectrum(&a), a.common.json),
        Command::Radical(a) => (commands::radical(&a), a.common.json),
        Command::Decompose(a) => (commands::decompose(&a), a.common.json),
        Command::Marin(a) => (commands::marin(&a), a.common.json),
        Command::DomainCheck(a) => (commands::domain_check(&a), a.common.json),
        Command::Snf(a) => (commands::snf(&a), a.common.json),
        Command::Zspec(a) => (commands::zspec(&a), a.common.json),
        Command::Ring(a) => (commands::ring(&a), a.common.json),
        Command::Verify(a) => (commands::verify(&a), a.inputs.common.json),
        Command::Corpus(a) => (commands::corpus(&a), a.common.json),
    };
    outcome.finish(json)
}
