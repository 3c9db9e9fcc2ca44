//! Partition refinement on vertex tuples: Weisfeiler-Leman, counting and
//! invertible-map operators, coherent configurations, and a harness for
//! comparing the resulting approximation schemes on small graphs.

pub mod coherent;
pub mod error;
pub mod field;
pub mod generators;
pub mod partition;
pub mod refine;
pub mod spas;

pub use error::{Error, Result};
pub use partition::{Comparison, Graph, LabelledPartition};
