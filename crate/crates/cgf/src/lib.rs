//! File formats, parallel drivers and the `cgf` command line on top of
//! [`cgf_core`].

pub mod cache;
pub mod cli;
pub mod error;
pub mod output;
pub mod parallel;
pub mod parse;

pub use error::{CliError, Result};
