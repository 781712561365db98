//! Command-line front end for `ordlab-core`: file formats, DOT/JSON output
//! and the acceptance suites.

pub mod cli;
pub mod emit;
pub mod formats;
pub mod suite;
