//! File formats, configuration and the experiment runner behind the
//! `framekit` binary.
//!
//! A run goes `flags/config file -> validate -> execute -> atomic write ->
//! manifest`. Everything random is derived from the config seed, and trial
//! results are reduced in index order, so output bytes do not depend on the
//! thread count.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod parallel;

pub use config::{validate, validate_value, Command, ExperimentConfig};
pub use error::CliError;
pub use manifest::{run, RunManifest};

pub const VERSION: &str = concat!("framekit-cli ", env!("CARGO_PKG_VERSION"));
