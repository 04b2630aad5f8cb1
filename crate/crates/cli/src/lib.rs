//! Command-line driver for the einstab analyses: configuration, dispatch,
//! parallel sweeps and deterministic reports.

pub mod config;
pub mod error;
pub mod lowdim;
pub mod real;
pub mod render;
pub mod report;
pub mod run;

pub use config::{AnalysisConfig, Format};
pub use error::CliError;
pub use report::Report;
pub use run::{run, Outcome};
