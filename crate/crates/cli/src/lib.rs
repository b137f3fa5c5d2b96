//! File formats, rendering, presets and self-verification around
//! `frft-core`, plus the `frft` command line.

mod cli;
pub mod config;
pub mod emit;
pub mod error;
pub mod presets;
pub mod verify;
pub mod wav;

pub use cli::run;
pub use error::{CliError, Result};
