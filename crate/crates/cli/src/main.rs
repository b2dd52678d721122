use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use acyclic_census::counts::SequenceKind;
use acyclic_census::oracle::DEFAULT_BUDGET;
use acyclic_census_cli::{
    cmd_constants, cmd_count, cmd_poly, cmd_smallcover, cmd_verify, CliError, CoverKind, Format,
    OutputEnvelope, Suite, VerifyOptions, CACHE_ENV,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Exact and asymptotic counts of labelled acyclic digraphs.
#[derive(Debug, Parser)]
#[command(name = "acyclic-census", version)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sequence {
    /// Acyclic digraphs.
    A,
    /// Bicolored digraphs whose red vertices are sources.
    B,
    /// `A_n(2^r - 1)`; needs `--r`.
    H,
    /// Acyclic k-multidigraphs; needs `--k`.
    #[value(name = "Ak", alias = "ak")]
    Ak,
    /// Equivariant classes over the cube.
    Eq7,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a sequence for n up to --n-max.
    Count {
        sequence: Sequence,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Print the arc enumerator coefficients of order n.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// Count small-cover classes.
    Smallcover {
        kind: CoverKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Least root of Psi(k, z) and the associated constants.
    Constants {
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 25)]
        digits: u32,
    },
    /// Recompute and check published values and identities.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Poly { .. } => "poly",
            Command::Smallcover { .. } => "smallcover",
            Command::Constants { .. } => "constants",
            Command::Verify { .. } => "verify",
        }
    }
}

fn sequence_kind(
    sequence: Sequence,
    r: Option<u32>,
    k: Option<u64>,
) -> Result<SequenceKind, CliError> {
    let usage = |msg: &str| Err(CliError::Usage(msg.to_owned()));
    match (sequence, r, k) {
        (Sequence::A, None, None) => Ok(SequenceKind::A),
        (Sequence::B, None, None) => Ok(SequenceKind::B),
        (Sequence::Eq7, None, None) => Ok(SequenceKind::Eq7),
        (Sequence::H, Some(0), None) => usage("h needs --r >= 1"),
        (Sequence::H, Some(r), None) if r > 64 => usage("h supports --r up to 64"),
        (Sequence::H, Some(r), None) => Ok(SequenceKind::H { r }),
        (Sequence::H, _, _) => usage("h takes --r and no --k"),
        (Sequence::Ak, None, Some(0)) => usage("Ak needs --k >= 1"),
        (Sequence::Ak, None, Some(k)) => Ok(SequenceKind::Ak { k }),
        (Sequence::Ak, _, _) => usage("Ak takes --k and no --r"),
        _ => usage("a, b and eq7 take neither --r nor --k"),
    }
}

fn run(command: Command) -> Result<OutputEnvelope, CliError> {
    let cache = std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    match command {
        Command::Count {
            sequence,
            n_max,
            r,
            k,
        } => cmd_count(sequence_kind(sequence, r, k)?, n_max, cache.as_deref()),
        Command::Poly { n, k } => cmd_poly(n, k),
        Command::Smallcover { kind, n, r } => cmd_smallcover(kind, n, r),
        Command::Constants { k, digits } => cmd_constants(k, digits),
        Command::Verify {
            suite,
            order,
            budget,
        } => {
            if order == 0 {
                return Err(CliError::Usage("--order must be at least 1".into()));
            }
            Ok(cmd_verify(
                suite,
                &VerifyOptions {
                    order,
                    budget,
                    cache,
                },
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let start = Instant::now();
    let (mut envelope, code) = match run(cli.command) {
        Ok(envelope) => {
            let code = envelope.exit_code();
            (envelope, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            (e.into_envelope(name), code)
        }
    };
    envelope.timing_ms = start.elapsed().as_millis() as u64;
    let show = envelope.reason.is_none() || cli.format == Format::Json;
    if show {
        print!("{}", envelope.render(cli.format));
    }
    ExitCode::from(code as u8)
}
