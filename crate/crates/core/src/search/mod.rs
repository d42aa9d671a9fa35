//! Population search for new self-dual neighbours.

mod config;
mod registry;
pub mod voa;

pub use config::SearchConfig;
pub use registry::{KeySource, Registry, RegistryKey};
pub use voa::{run, Fitness, SearchOutcome, Virus, VirusClass};
