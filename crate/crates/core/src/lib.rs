pub mod abundance;
pub mod error;
pub mod eset;
pub mod family;
pub mod fixtures;
pub mod poset;
pub mod quotient;
pub mod search;
pub mod tent;
pub mod topology;
pub mod witness;

pub use error::{Error, Result};
pub use eset::ESet;
pub use family::{ElementId, NeighborhoodMap, ParseOptions, SetFamily};
pub use witness::{InjectionWitness, Method};
