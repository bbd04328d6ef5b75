//! Config-driven front end for the `jaffine` library: construct codes from
//! JSON descriptions, reproduce the built-in result tables, search defining
//! sets, check the existence-bound flag, and cache distance computations.

pub mod cache;
pub mod config;
pub mod report;
pub mod runner;
pub mod search;
pub mod tables;

/// Nominal enumeration speed used to turn `budget_seconds` into a
/// deterministic leaf budget. Reports therefore never depend on wall-clock
/// jitter or the machine they ran on; the figure is a deliberately
/// conservative estimate of the packed enumeration throughput.
pub const NOMINAL_LEAVES_PER_SECOND: f64 = 20_000_000.0;

/// Nominal candidate-evaluation speed for the defining-set search; the
/// budget caps how many candidates are examined, in a fixed order.
pub const NOMINAL_CANDIDATES_PER_SECOND: f64 = 25.0;
