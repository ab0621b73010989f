//! Simulation and exact Bayesian analysis of a quantum constancy test.
//!
//! The question: given f: {0..N-1} -> {0..M-1}, is f constant? One
//! superposed evaluation leaves the computer in a state that encodes all N
//! values at once, and measuring it in a two-dimensional Fourier basis
//! either proves f non-constant, returns an uninformative FAIL, or lands
//! in one of M-1 constant-indication outcomes. Beyond the 2x2 case the
//! indication is only probabilistic, so the interesting quantity is the
//! exact posterior Pr(const | k indications) - computed here in
//! arbitrary-precision rational arithmetic and compared against the best
//! classical strategy, which samples f point by point.
//!
//! Module map:
//!
//! - [`function_space`]: problem instances, row profiles, enumeration.
//! - [`ftm`]: the Fourier measurement basis, amplitudes, outcome classes.
//! - [`combinatorics`]: admissible profiles and exact multiplicities.
//! - [`inference`]: quantum and classical posteriors.
//! - [`asymptotics`]: worst-case error curves and best-case statistics.
//! - [`montecarlo`]: seeded outcome sampling plus the enumeration oracle.
//! - [`selfcheck`]: the invariant suites behind `qconst selfcheck`.
//!
//! The `examples/` directory holds one runnable walkthrough per
//! capability (`cargo run --example deutsch`, `posterior_curves`, ...),
//! and the `qconst` binary exposes the same functionality as batch
//! subcommands emitting CSV or JSON.

pub mod asymptotics;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod ftm;
pub mod function_space;
pub mod inference;
pub mod montecarlo;
pub mod output;
pub mod selfcheck;

pub use error::{Error, Result};
pub use ftm::{FtmOutcome, FunctionMatrix, OutcomeClass, OutcomeDistribution};
pub use function_space::{FunctionSpec, RowProfile, DEFAULT_ENUMERATION_CAP};
pub use inference::PosteriorQuery;
pub use montecarlo::{ExperimentConfig, PosteriorEstimate};
