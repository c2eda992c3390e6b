//! Library side of the `sah-cli` binary: input parsing, seeded instance
//! generators, and the acceptance-suite battery. Kept as a library so the
//! integration tests can run the same battery the `suite` subcommand runs.

pub mod config;
pub mod gen;
pub mod parse;
pub mod suite;

pub use config::Config;
