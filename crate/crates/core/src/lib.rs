//! Constacyclic codes of length `q^2 + 1` over `F_{q^2}` built from two nonzeros, together
//! with the tools needed to check their properties by exhaustion: weight distributions,
//! supported 3-designs, subfield subcodes, root counts of the related polynomial equations,
//! and the derived entanglement-assisted quantum and locally recoverable code parameters.

pub mod constacyclic;
pub mod designs;
pub mod equations;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod numtheory;
pub mod pipeline;
pub mod poly;
pub mod quantum_lrc;
pub mod report;
pub mod subfield;
pub mod subsets;
pub mod wdist;

pub use constacyclic::{ConstacyclicCode, Family};
pub use error::{Error, Result};
pub use gf::{Elem, FieldTower, Level, TowerDescriptor};
pub use poly::Poly;
pub use wdist::WeightDistribution;
