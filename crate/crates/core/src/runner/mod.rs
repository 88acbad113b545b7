//! Experiment runner: JSON configurations, column-oriented result tables,
//! and the command entry points shared by the CLI and the examples.

mod commands;
mod config;
mod table;

pub use commands::{cmd_negativity, cmd_steady, cmd_table1, cmd_teff, cmd_tracedist};
pub use config::{ExperimentConfig, OutputFormat, OutputSpec, SweepSpec};
pub use table::{format_float, Column, Metadata, ResultTable, Series};
