//! Batch experiment runner: TOML-configured pipelines from sampling through
//! recovery, with manifests, persisted outputs and convergence sweeps.

pub mod config;
pub mod error;
pub mod manifest;
pub mod pipeline;
pub mod sweep;

pub use config::ExperimentConfig;
pub use error::RunError;
pub use manifest::RunManifest;
pub use pipeline::{run, RunOutcome, Stage};
pub use sweep::{sweep, SweepAxis};
