//! Command-line pipelines over `coverhom-core`: input parsing, the character
//! table cache, JSON reports and the decompose / cover / act / demo runs.

pub mod cache;
pub mod config;
pub mod demo;
pub mod error;
pub mod input;
pub mod pipeline;
pub mod report;
pub mod sweep;

pub use config::{Command, ComponentSelector, JobConfig, VerifyLevel};
pub use demo::run_demo;
pub use error::{CliError, CliResult};
pub use pipeline::{run, run_act, run_cover, run_decompose, CoverJob};
pub use report::Report;
