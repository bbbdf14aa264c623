//! Command-line front end for the `infcomm` library: file ingestion,
//! PageRank weights, synthetic graphs, query reports and benchmarks.

pub mod bench;
pub mod cli;
pub mod commands;
pub mod error;
pub mod generate;
pub mod io;
pub mod pagerank;
pub mod report;

pub use error::{CliError, Result};
