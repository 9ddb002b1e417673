pub mod analysis;
pub mod datasets;
pub mod error;
pub mod export;
pub mod graph;
pub mod measures;
pub mod partition;
pub mod replicate;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Graph, RawInteractionTable, SymmetryRule};
pub use measures::{Measure, MeasureValue};
pub use partition::Partition;
