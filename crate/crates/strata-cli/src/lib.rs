//! Command line front end for the strata-core machinery: deterministic
//! JSON/CSV reports over chains, type censuses, stability constants and the
//! degree-5 del Pezzo lattice, plus the `verify` entry point running the
//! exhaustive check suites.
//!
//! Exit codes: 0 on success (including help and version), 1 on malformed
//! input, 2 when a verification suite reports a failing check. The failing
//! report is still printed in full in that last case.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use strata_core::types::TypeFlavor;

pub mod commands;
pub mod report;
pub mod suites;

use commands::DpOp;
use report::Report;
use suites::SuiteConfig;

#[derive(Debug, Parser)]
#[command(
    name = "strata",
    version,
    about = "Censuses and verification suites for labeled-divisor strata on blowups"
)]
struct Cli {
    /// Report format printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory additionally receiving <subcommand>.json and
    /// <subcommand>.csv copies of the report.
    #[arg(long, global = true, env = "STRATA_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Absolute,
    Relative,
    Pointed,
}

impl From<Flavor> for TypeFlavor {
    fn from(f: Flavor) -> TypeFlavor {
        match f {
            Flavor::Absolute => TypeFlavor::Absolute,
            Flavor::Relative => TypeFlavor::Relative,
            Flavor::Pointed => TypeFlavor::Pointed,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the saturated chains on a blowup poset with their covers and
    /// essential elements.
    Chains {
        /// Number of exceptional lines.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Ambient projective dimension (at least 3).
        #[arg(long, default_value_t = 3)]
        dimv: u32,
        /// Largest total chain depth in the table.
        #[arg(long, default_value_t = 3)]
        max_depth: u32,
    },
    /// Tabulate the essential saturated types with their stratum invariants.
    Census {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        dimv: u32,
        /// Kind of types to enumerate.
        #[arg(long, value_enum, default_value_t = Flavor::Absolute)]
        flavor: Flavor,
        /// Most points per type.
        #[arg(long, default_value_t = 2)]
        max_points: usize,
        /// Largest total depth of an entry's upper chain.
        #[arg(long, default_value_t = 2)]
        max_depth: u32,
        /// Drop rows with kappa above this bound.
        #[arg(long)]
        kappa_max: Option<i64>,
        /// Add the stalk Betti columns.
        #[arg(long)]
        with_mu: bool,
    },
    /// Compute the stability constants of one numeric context.
    Stability {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Degree of the maps.
        #[arg(long)]
        d: i64,
        /// Line multiplicities, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        n: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        dimv: u32,
        /// Also evaluate the general-position clause.
        #[arg(long)]
        general_position: bool,
        /// Use the pointed connectivity range.
        #[arg(long)]
        pointed: bool,
    },
    /// Answer a question about a divisor class on the plane blown up at
    /// four points.
    Delpezzo {
        /// The class `d,n1,n2,n3,n4`.
        #[arg(long)]
        alpha: String,
        #[command(subcommand)]
        op: DpOpArg,
    },
    /// Run the exhaustive verification suites.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest number of lines in the exhaustive sweeps.
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        /// Seed of the randomized checks.
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// Sample count of the randomized checks.
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        /// Worker threads; 0 means one per core. Does not affect the
        /// report bytes.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum DpOpArg {
    /// Test positivity against the ten -1-curves.
    Ample,
    /// Reduce to the degree-minimal Weyl representative.
    Normalize,
    /// Maximize the feasible slope over the Weyl orbit.
    Nalpha,
}

impl From<DpOpArg> for DpOp {
    fn from(op: DpOpArg) -> DpOp {
        match op {
            DpOpArg::Ample => DpOp::Ample,
            DpOpArg::Normalize => DpOp::Normalize,
            DpOpArg::Nalpha => DpOp::Nalpha,
        }
    }
}

/// File stem of the report copies written to the output directory.
fn stem(command: &Command) -> &'static str {
    match command {
        Command::Chains { .. } => "chains",
        Command::Census { .. } => "census",
        Command::Stability { .. } => "stability",
        Command::Delpezzo { .. } => "delpezzo",
        Command::Verify { .. } => "verify",
    }
}

fn build_report(command: &Command) -> anyhow::Result<Report> {
    match command {
        Command::Chains { r, dimv, max_depth } => commands::cmd_chains(*r, *dimv, *max_depth),
        Command::Census {
            r,
            dimv,
            flavor,
            max_points,
            max_depth,
            kappa_max,
            with_mu,
        } => commands::cmd_census(
            *r,
            *dimv,
            (*flavor).into(),
            *max_points,
            *max_depth,
            *kappa_max,
            *with_mu,
        ),
        Command::Stability {
            genus,
            d,
            n,
            dimv,
            general_position,
            pointed,
        } => commands::cmd_stability(*genus, *d, n, *dimv, *general_position, *pointed),
        Command::Delpezzo { alpha, op } => {
            let class = commands::parse_alpha(alpha)?;
            commands::cmd_delpezzo(&class, (*op).into())
        }
        Command::Verify {
            suite,
            max_r,
            seed,
            samples,
            jobs,
        } => {
            let cfg = SuiteConfig {
                max_r: *max_r,
                seed: *seed,
                samples: *samples,
            };
            commands::cmd_verify(suite, &cfg, *jobs)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<i32> {
    let report = build_report(&cli.command)?;
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    print!("{rendered}");
    if let Some(dir) = &cli.out_dir {
        std::fs::create_dir_all(dir)?;
        let name = stem(&cli.command);
        std::fs::write(dir.join(format!("{name}.json")), report.to_json())?;
        std::fs::write(dir.join(format!("{name}.csv")), report.to_csv())?;
    }
    Ok(if report.all_checks_pass() { 0 } else { 2 })
}

/// Parses the command line, runs the command and returns the process exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            }
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
