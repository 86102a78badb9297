//! File formats, reports and subcommands behind the `gleason` binary.

pub mod commands;
pub mod demo;
pub mod error;
pub mod greechie_format;
pub mod matrix_format;
pub mod report;

pub use error::CliError;
