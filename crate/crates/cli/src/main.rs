mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

/// Genus-0 Gromov-Witten invariants of Hilb^2(P^2), hyperelliptic curve
/// counts and small quantum cohomology, in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "hilbgw", version)]
pub struct Cli {
    /// Cap on worker threads used while building equations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Also print a floating-point approximation (marked "approx") of exact values.
    #[arg(long, global = true)]
    pub float: bool,

    /// Print a versioned JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Include wall-clock time in the output.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Preload invariants from a cache file before running.
    #[arg(long, global = true, value_name = "PATH")]
    pub load_cache: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// A single invariant I_(a,b)(T_i1, ..., T_in).
    Invariant(InvariantArgs),
    /// I and E columns for one degree and number of conjugate pairs.
    Hyperelliptic(HyperellipticArgs),
    /// Recompute the published tables and diff them against the fixture.
    Tables(TablesArgs),
    /// Small quantum products and the two cubic relations.
    Qcoh(QcohArgs),
    /// Rational plane curve counts N_d.
    Oracle(OracleArgs),
    /// Save or load the memo store.
    #[command(subcommand)]
    Cache(CacheCommand),
    /// Dump a target datum (ring, pairing, decompositions) as JSON.
    Datum(DatumArgs),
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    /// Curve class as `a,b`.
    #[arg(long, value_parser = parse_class)]
    pub class: (u32, u32),
    /// Basis indices, comma separated (0..8).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub insertions: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct HyperellipticArgs {
    #[arg(long)]
    pub degree: u32,
    /// Number of conjugate point pairs.
    #[arg(long, default_value_t = 0)]
    pub pairs: u32,
    /// Print CSV with a header row.
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Compare against the embedded published tables (the default).
    #[arg(long)]
    pub paper: bool,
    #[arg(long, default_value_t = 7)]
    pub max_degree: u32,
    /// Compare against a JSON fixture instead of the embedded tables.
    #[arg(long, value_name = "PATH", conflicts_with = "paper")]
    pub fixture: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct QcohArgs {
    #[arg(long, default_value_t = 4)]
    pub n1: u32,
    #[arg(long, default_value_t = 2)]
    pub n2: u32,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Degree d.
    #[arg(long)]
    pub nd: u32,
    /// Also run the WDVV engine on P^2 and compare.
    #[arg(long)]
    pub check: bool,
}

#[derive(Subcommand, Debug)]
pub enum CacheCommand {
    /// Compute every table up to a degree and write the memo store.
    Export {
        path: std::path::PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Validate and load a cache file, optionally writing the store back out.
    Import {
        path: std::path::PathBuf,
        #[arg(long, value_name = "PATH")]
        export: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TargetName {
    Hilb2p2,
    P2,
}

#[derive(Args, Debug)]
pub struct DatumArgs {
    #[arg(long, value_enum, default_value = "hilb2p2")]
    pub target: TargetName,
}

fn parse_class(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<u32>()
            .map_err(|_| format!("class coordinates must be nonnegative integers, got {s:?}"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, argv) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Count(_) => 3,
            CliError::Engine { .. } | CliError::Io(_) => 1,
        }
    }
}
