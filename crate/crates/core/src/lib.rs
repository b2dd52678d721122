//! Exact and asymptotic enumeration of labelled acyclic digraphs.
//!
//! The crate is organised around four pieces:
//!
//! * [`counts`]: arbitrary-precision recurrences for acyclic digraphs, their
//!   arc enumerators, acyclic `k`-multidigraphs, source-constrained bicolored
//!   digraphs and the small-cover class counts derived from them.
//! * [`series`]: exact truncated graphic power series over the rationals, used
//!   to check the generating-function identities behind the recurrences.
//! * [`asymptotics`]: fixed-point evaluation of the alternating graphic series
//!   `Psi(k, z)`, its least positive root and the asymptotic constants.
//! * [`oracle`]: brute-force enumeration of small (multi)digraphs that certifies
//!   the recurrences independently.
//!
//! Data-parallel loops (oracle enumeration, constant families) run on rayon
//! when the `parallel` feature is enabled and fall back to plain iteration
//! otherwise; see [`Execution`].

pub mod asymptotics;
mod combinat;
pub mod counts;
mod exec;
pub mod oracle;
pub mod real;
pub mod series;

pub use asymptotics::{PrecisionContext, RootResult};
pub use counts::{ArcPolynomial, Census, SequenceKind, SequenceTable};
pub use exec::Execution;
pub use oracle::MultiDigraph;
pub use real::Real;
pub use series::GraphicSeries;
