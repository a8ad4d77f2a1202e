//! The `quadnorm` command line, exposed as a library so tests can drive it
//! without spawning processes.

mod render;

use std::ffi::OsString;
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use quadnorm_core::survey::SurveyOptions;
use quadnorm_core::{Error, Radical};

/// Largest survey bound accepted for discriminants and radicals.
const MAX_BOUND: u64 = 1 << 60;
/// Largest trace for the first-occurrence survey; keeps `t^2 + 4` in a `u64`.
const MAX_TRACE: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "quadnorm",
    version,
    about = "Norm of the fundamental unit and principality relations in real quadratic fields"
)]
struct Cli {
    /// Worker threads for surveys [default: available parallelism]
    #[arg(long, global = true, env = "QUADNORM_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,

    /// Shorthand for `--format json`
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress survey progress on stderr
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fundamental unit of Q(sqrt M) and its norm
    Unit { m: u64 },
    /// Supports read off eps + 1 and eps - 1, and the predicted norm
    Criterion { m: u64 },
    /// Non-canonical relations of principality between ramified primes
    Relations {
        m: u64,
        /// Also print generators of both relations
        #[arg(long)]
        generators: bool,
    },
    /// Every principal product of ramified primes, as 0/1 vectors
    Lattice { m: u64 },
    /// Whether the prime above 2 is principal
    Q2 { m: u64 },
    /// Reference densities
    Constants,
    /// Exact counting surveys
    #[command(subcommand)]
    Survey(SurveyCommand),
}

#[derive(Debug, Subcommand)]
enum SurveyCommand {
    /// Discriminants 5 <= D <= bound with -1 a norm
    Main {
        #[arg(long)]
        bound: u64,
    },
    /// Six-way split of radicals in [min, max]
    Partial {
        #[arg(long, default_value_t = 2)]
        min: u64,
        #[arg(long)]
        max: u64,
    },
    /// Fields met by ascending trace, first `bound` candidates
    Fop {
        #[arg(long)]
        bound: u64,
    },
    /// Parity of b for M = 2 mod 8 in (min, max]
    Parity {
        #[arg(long, default_value_t = 0)]
        min: u64,
        #[arg(long)]
        max: u64,
    },
}

/// Why a command did not produce output.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments; exit code 2.
    Invalid(String),
    /// A broken invariant or I/O failure; exit code 1.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent { .. } | Error::Parity { .. } | Error::MixedRadicals(..) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
            return code;
        }
    };
    match execute(&cli).and_then(|text| emit(&cli, &text, out)) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Internal(e.to_string());
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Internal(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn radical(m: u64) -> Result<Radical, Failure> {
    Ok(Radical::new(m)?)
}

fn check_bound(name: &str, value: u64, max: u64) -> Result<(), Failure> {
    if value > max {
        return Err(Failure::Invalid(format!("--{name} {value} exceeds {max}")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let format = if cli.json { Format::Json } else { cli.format };
    match &cli.command {
        Command::Unit { m } => render::unit(&radical(*m)?, format),
        Command::Criterion { m } => render::criterion(&radical(*m)?, format),
        Command::Relations { m, generators } => {
            render::relations(&radical(*m)?, *generators, format)
        }
        Command::Lattice { m } => render::lattice(&radical(*m)?, format),
        Command::Q2 { m } => render::q2(&radical(*m)?, format),
        Command::Constants => render::constants(format),
        Command::Survey(kind) => survey(cli, kind, format),
    }
}

fn survey(cli: &Cli, kind: &SurveyCommand, format: Format) -> Result<String, Failure> {
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let show = !cli.quiet && io::stderr().is_terminal();
    let last = AtomicU64::new(u64::MAX);
    let report = |done: u64, total: u64| {
        let pct = done * 100 / total.max(1);
        if last.swap(pct, Ordering::Relaxed) != pct {
            eprint!("\r{pct:3}%");
        }
    };
    let opts = SurveyOptions {
        jobs,
        progress: show.then_some(&report as _),
    };
    let text = match *kind {
        SurveyCommand::Main { bound } => {
            check_bound("bound", bound, MAX_BOUND)?;
            render::survey_main(bound, &opts, format)
        }
        SurveyCommand::Partial { min, max } => {
            check_bound("max", max, MAX_BOUND)?;
            render::survey_partial(min, max, &opts, format)
        }
        SurveyCommand::Fop { bound } => {
            check_bound("bound", bound, MAX_TRACE)?;
            render::survey_fop(bound, &opts, format)
        }
        SurveyCommand::Parity { min, max } => {
            check_bound("max", max, MAX_BOUND)?;
            render::survey_parity(min, max, &opts, format)
        }
    };
    if show {
        eprintln!();
    }
    text
}
