//! `zpk`: exact zero-product probabilities of finite commutative rings.

mod output;
mod verbs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zpk_core::catalog::DEFAULT_ISO_CAP;

#[derive(Debug, Parser)]
#[command(name = "zpk", version, about = "Exact zero-product probabilities of finite commutative rings")]
pub struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Verb {
    /// Print zp_k(R) as an exact fraction
    Compute,
    /// Print every applicable bound on zp_k(R) with attainment flags
    Bounds,
    /// Check bounds and equality conditions for one ring or the whole catalog
    Verify,
    /// Classify the local catalog rings with zp_k >= B_k(2;3)
    Classify,
    /// Reproduce the table of known exact values
    Table,
    /// List catalog entries with their structural flags
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: u32,
    pub hi: u32,
}

impl KRange {
    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

fn parse_k(s: &str) -> Result<KRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not a nonnegative integer"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(KRange { lo, hi })
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    /// Ring expression, e.g. "Z4 x GF(2^3)" or "Ideal(Z4,[2])"
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Exponent or inclusive range such as 2..8
    #[arg(long, global = true, value_parser = parse_k)]
    pub k: Option<KRange>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Table size cap for single rings, or the catalog order filter for sweeps
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    /// Also check against brute-force enumeration of at most this many tuples
    #[arg(long, global = true)]
    pub bruteforce_cap: Option<u128>,
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_CAP)]
    pub iso_cap: usize,
    /// Catalog manifest to use instead of the built-in catalog
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.verb {
        Verb::Compute => verbs::compute(&cli.opts),
        Verb::Bounds => verbs::bounds(&cli.opts),
        Verb::Verify => verbs::verify(&cli.opts),
        Verb::Classify => verbs::classify(&cli.opts),
        Verb::Table => verbs::table(&cli.opts),
        Verb::Catalog => verbs::catalog(&cli.opts),
    };
    match result {
        Ok(out) => {
            print!("{}", out.rendered);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("zpk: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
