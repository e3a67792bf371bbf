//! File formats, reports and the command-line front end for `plumbcalc-core`.

mod cli;
pub mod error;
pub mod format;
pub mod output;
pub mod sweep;

pub use cli::run;
pub use error::CliError;
