//! Command implementations behind the `acyclic-census` binary.
//!
//! Every command returns an [`OutputEnvelope`]; rendering to text, JSON or
//! CSV and the mapping to process exit codes live in [`envelope`].

pub mod cache;
pub mod commands;
pub mod envelope;
pub mod reference;
pub mod verify;

pub use commands::{cmd_constants, cmd_count, cmd_poly, cmd_smallcover, CliError, CoverKind};
pub use envelope::{Format, OutputEnvelope, Status};
pub use verify::{cmd_verify, Suite, VerifyOptions};

/// Environment variable naming the optional sequence cache file.
pub const CACHE_ENV: &str = "ACYCLIC_CENSUS_CACHE";
