//! striplab — a numerical laboratory for ancient caloric functions on an
//! infinite strip.
//!
//! The library constructs exact ancient solutions of divergence-form
//! parabolic equations on a strip with Dirichlet sides, generates further
//! solutions by finite differences, and verifies the quantitative estimates
//! that govern them: the reverse Poincaré (Caccioppoli-type) inequality, the
//! exponential growth lower bound behind the polynomial Liouville property,
//! the parabolic mean value inequality, and the scale-selection /
//! simultaneous-diagonalization machinery used to bound the dimension of the
//! exponential-growth solution space.
//!
//! Start from the runnable examples (`cargo run --release --example ...`):
//! each one exercises a major capability end to end.  The `striplab` binary
//! exposes the same operations behind a subcommand CLI with JSON/CSV reports.

pub mod cli;
pub mod cm;
pub mod config;
pub mod error;
pub mod estimates;
pub mod fd;
pub mod geometry;
pub mod gram;
pub mod linalg;
pub mod quadrature;
pub mod report;
pub mod solutions;

pub use error::{Error, Result};
