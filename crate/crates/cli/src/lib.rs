//! Batch front end: argument parsing, run configurations and dispatch.

pub mod args;
pub mod config;
pub mod run;

pub use config::RunConfig;
pub use run::{exit_code, run};
