//! Tuples, labelled partitions of `V^k`, and graph-like predicates.

mod graph;
mod labelled;
mod predicates;
mod tuple;

pub use graph::{atomic_types, Graph};
pub use labelled::{
    canonical_labels, canonicalize, compare, flatten, project_partition, reshape, Comparison,
    LabelledPartition,
};
pub use predicates::{is_consistent, is_graph_like, is_invariant, PredicateReport};
pub use tuple::{
    all_index_vectors, concat, injective_index_vectors, project, substitute, IndexVector, Tuple,
    TupleSpace, DEFAULT_MAX_TUPLES,
};
