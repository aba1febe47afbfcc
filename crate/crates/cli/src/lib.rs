//! Command-line driver for cubical spun 2-knots: file formats, mesh export,
//! the parallel search runner and the `cubispin` subcommands.

pub mod cli;
pub mod export;
pub mod formats;
pub mod runner;

pub use cli::run;
