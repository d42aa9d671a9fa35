//! Binary self-dual codes of length 72 built from group matrix rings,
//! certified by low-weight enumeration, and extended through neighbour
//! chains driven by a virus-optimisation population search.

pub mod analysis;
pub mod code;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod gray;
pub mod neighbour;
pub mod record;
pub mod search;

pub use analysis::{certify, certify_auto, screen, Analysis, Certificate, Screen};
pub use code::{CodeType, EnumeratorFamily, EnumeratorParams, LinearCode, MinDistance, WeightWindow};
pub use construct::{build_generator, BlockKind, BlockSeed, GeneratorFamily};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use neighbour::{chain, intersection_dim, neighbour, NeighbourStep};
pub use record::{CodeRecord, CodeSource, Provenance};
pub use search::{Registry, RegistryKey, SearchConfig};
