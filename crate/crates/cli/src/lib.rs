//! Command-line front end: argument validation, commands and output encoding.

// `!(a < b)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod error;
pub mod output;
pub mod run;

pub use args::{parse_args, RunConfig};
pub use error::CliError;
pub use run::run;
