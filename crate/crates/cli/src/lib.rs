//! Batch experiment runner: config parsing, the experiment registry,
//! character-table caching, and report assembly.

pub mod cache;
pub mod config;
pub mod report;
pub mod run;

pub use config::ExperimentConfig;
pub use report::Report;
pub use run::run;
