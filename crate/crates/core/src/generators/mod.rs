//! Graph corpus: named families, random coloured digraphs, CFI pairs,
//! disjoint unions and the `.ccg.json` document format.

mod cfi;
mod corpus;
mod graphdoc;
mod named;
mod random;
mod union;

pub use cfi::{cfi_graph, cfi_pair, CfiGraph, CfiPair, CFI_VERTEX_CAP};
pub use corpus::{corpus_up_to, default_corpus, NamedGraph};
pub use graphdoc::{decode, encode, GraphDefaults, GraphDoc};
pub use named::{
    all_n4, complete, complete_bipartite, cycle, grid, named, path, petersen, rook44, shrikhande,
};
pub use random::random_coloured_digraph;
pub use union::{disjoint_union, disjoint_union_with};
