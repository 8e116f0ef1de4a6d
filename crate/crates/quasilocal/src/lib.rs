//! Scenario configs, the verification pipeline, reports and sweeps on top of
//! `quasilocal-core`.

pub mod config;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod sweep;

pub use config::ScenarioConfig;
pub use error::{HResult, HarnessError};
pub use pipeline::Pipeline;
