//! File formats, fixture catalog and report rendering for the `mahavier` command.

pub mod catalog;
pub mod config;
pub mod output;
pub mod parse;
pub mod suite;
pub mod threads;
pub mod tolerances;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] mahavier_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
