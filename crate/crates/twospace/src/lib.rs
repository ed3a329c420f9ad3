//! File formats, reports, parallel simulation and the command line for
//! [`twospace_core`].

pub mod cli;
pub mod error;
pub mod parallel;
pub mod report;
pub mod scheme_file;
pub mod table;

pub use error::CliError;
