//! `cuspkit`: command-line front end.
//!
//! Exit codes: 0 when a result is rendered (negative verdicts included),
//! 1 for invalid input, 2 when a search budget or a supported bound is exceeded.

mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cuspkit_core::CycleWord;

use cache::FileCache;
use commands::{CliError, CliResult, SmoothableOptions};
use report::{Format, Meta, Record};

#[derive(Parser, Debug)]
#[command(
    name = "cuspkit",
    version,
    about = "Cusp singularities with an antisymplectic involution"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Directory for cached toric models (default: $CUSPKIT_CACHE_DIR, then the user data dir)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Do not read or write the toric model cache
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CycleArgs {
    /// Cycle entries, e.g. 3,10,3,4
    #[arg(long, allow_hyphen_values = true)]
    cycle: CycleWord,

    /// Restrict to the reflection with this (even) axis
    #[arg(long)]
    axis: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the cusp conditions on a cycle
    Validate(CycleArgs),
    /// Dual cycle of a cusp
    Dual(CycleArgs),
    /// Reflections of a cusp and the induced reflections of its dual
    Symmetry(CycleArgs),
    /// Monodromy matrix, involution matrix and torsion candidates
    Involution(CycleArgs),
    /// Resolution graph and class group of the quotient singularity
    Quotient(CycleArgs),
    /// Decide the sufficient condition for an equivariant smoothing, per axis
    Smoothable {
        #[command(flatten)]
        cycle: CycleArgs,
        /// The cycle is already the boundary (dual) cycle
        #[arg(long)]
        dual_given: bool,
        /// Confirm each verdict by brute-force search
        #[arg(long)]
        cross_check: bool,
        /// State budget for the brute-force search
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Equivariant toric models of a given length
    EnumerateToric {
        #[arg(long)]
        length: usize,
    },
    /// Symmetric cycles of a given length on which the condition fails on every axis
    Scan {
        #[arg(long)]
        length: usize,
        /// Largest entry of the scanned boundary cycles
        #[arg(long, default_value_t = 10)]
        max_entry: i64,
        /// Build and replay a witness for every accepted axis
        #[arg(long)]
        verify_witnesses: bool,
    },
    /// Fundamental group of the torus minus the curves of the given rays
    Pi1 {
        /// Primitive rays, e.g. "1,1;-1,1;-1,-1;1,-1"
        #[arg(long, allow_hyphen_values = true)]
        blowup_rays: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Dual(_) => "dual",
            Command::Symmetry(_) => "symmetry",
            Command::Involution(_) => "involution",
            Command::Quotient(_) => "quotient",
            Command::Smoothable { .. } => "smoothable",
            Command::EnumerateToric { .. } => "enumerate-toric",
            Command::Scan { .. } => "scan",
            Command::Pi1 { .. } => "pi1",
        }
    }
}

fn run(command: &Command, cache: &mut FileCache) -> CliResult<Vec<Record>> {
    match command {
        Command::Validate(a) => commands::validate(&a.cycle),
        Command::Dual(a) => commands::dual_cmd(&a.cycle),
        Command::Symmetry(a) => commands::symmetry(&a.cycle, a.axis),
        Command::Involution(a) => commands::involution(&a.cycle, a.axis),
        Command::Quotient(a) => commands::quotient(&a.cycle, a.axis),
        Command::Smoothable {
            cycle,
            dual_given,
            cross_check,
            budget,
        } => {
            let opts = SmoothableOptions {
                axis: cycle.axis,
                dual_given: *dual_given,
                cross_check: cross_check.then_some(*budget),
            };
            commands::smoothable(&cycle.cycle, &opts, cache)
        }
        Command::EnumerateToric { length } => commands::enumerate_toric(*length, cache),
        Command::Scan {
            length,
            max_entry,
            verify_witnesses,
        } => commands::scan(*length, *max_entry, *verify_witnesses, cache),
        Command::Pi1 { blowup_rays } => commands::pi1(&commands::parse_rays(blowup_rays)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let started = Instant::now();
    let mut cache = if cli.no_cache {
        FileCache::disabled()
    } else {
        FileCache::new(cache::resolve_dir(cli.cache_dir.as_deref()))
    };
    let echo = Record::Command {
        name: cli.command.name().to_string(),
        args: std::env::args().skip(1).collect(),
    };
    let records = match run(&cli.command, &mut cache) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("cuspkit: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let invalid = records
        .iter()
        .any(|r| matches!(r, Record::Validation { valid: false, .. }));
    let meta = Record::Meta(Meta {
        version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_ms: started.elapsed().as_millis() as u64,
        cache: cache.provenance().into(),
    });
    let mut all = Vec::with_capacity(records.len() + 2);
    all.push(echo);
    all.extend(records);
    all.push(meta);
    print!("{}", report::render(&all, cli.format));
    if invalid {
        ExitCode::from(CliError::Invalid(String::new()).exit_code())
    } else {
        ExitCode::SUCCESS
    }
}
