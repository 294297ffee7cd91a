//! File formats, the experiment runner and command plumbing for the
//! `spline-product` binary.

pub mod error;
pub mod experiment;
pub mod format;
pub mod rng;

pub use error::CliError;
