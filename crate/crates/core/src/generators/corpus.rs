use serde::{Deserialize, Serialize};

use super::named::{all_n4, cycle, path, petersen};
use crate::error::Result;
use crate::partition::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        NamedGraph { name: name.into(), graph }
    }
}

/// The standard test corpus: the 11 graphs on 4 vertices, `P_3`, `C_5`,
/// `C_6`, two disjoint triangles and the Petersen graph.
pub fn default_corpus() -> Result<Vec<NamedGraph>> {
    let mut out: Vec<NamedGraph> = all_n4()?
        .into_iter()
        .enumerate()
        .map(|(i, g)| NamedGraph::new(format!("n4_{i:02}"), g))
        .collect();
    out.push(NamedGraph::new("path3", path(3)?));
    out.push(NamedGraph::new("cycle5", cycle(5)?));
    out.push(NamedGraph::new("cycle6", cycle(6)?));
    let triangles = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
    out.push(NamedGraph::new("two_triangles", Graph::from_edges(6, &triangles)?));
    out.push(NamedGraph::new("petersen", petersen()?));
    Ok(out)
}

/// The default corpus restricted to at most `max_n` vertices.
pub fn corpus_up_to(max_n: usize) -> Result<Vec<NamedGraph>> {
    Ok(default_corpus()?.into_iter().filter(|g| g.graph.n() <= max_n).collect())
}
