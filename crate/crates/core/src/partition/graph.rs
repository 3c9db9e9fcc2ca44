use serde::{Deserialize, Serialize};

use super::labelled::LabelledPartition;
use super::tuple::{all_index_vectors, TupleSpace};
use crate::coherent::validate_rainbow;
use crate::error::{Error, Result};

/// An arc-coloured complete digraph: a rainbow on `V` with named colours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    partition: LabelledPartition,
    names: Vec<String>,
}

impl Graph {
    /// Wrap a rainbow, naming colour `i` as `c{i}`.
    pub fn from_partition(partition: LabelledPartition) -> Result<Self> {
        let names = (0..partition.class_count()).map(|i| format!("c{i}")).collect();
        Self::with_names(partition, names)
    }

    /// Wrap a rainbow; `names[i]` names canonical colour `i`.
    pub fn with_names(partition: LabelledPartition, names: Vec<String>) -> Result<Self> {
        if partition.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: partition.arity(),
            });
        }
        if names.len() != partition.class_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} colour names for {} classes",
                names.len(),
                partition.class_count()
            )));
        }
        let report = validate_rainbow(&partition);
        if !report.holds {
            return Err(Error::NotRainbow(report.violation.unwrap_or_default()));
        }
        Ok(Graph { partition, names })
    }

    /// Colour arcs by name.
    pub fn from_fn<S: Into<String>>(n: usize, mut colour: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let labels: Vec<String> = (0..n * n).map(|i| colour(i / n, i % n).into()).collect();
        let mut names: Vec<String> = Vec::new();
        for l in &labels {
            if !names.contains(l) {
                names.push(l.clone());
            }
        }
        let partition = LabelledPartition::from_labels(n, 2, labels)?;
        Self::with_names(partition, names)
    }

    /// A simple undirected graph with colours `loop`, `edge` and `nonedge`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Self::from_fn(n, |u, v| {
            if u == v {
                "loop"
            } else if adj[u * n + v] {
                "edge"
            } else {
                "nonedge"
            }
        })
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn partition(&self) -> &LabelledPartition {
        &self.partition
    }

    pub fn into_partition(self) -> LabelledPartition {
        self.partition
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class_count(&self) -> usize {
        self.partition.class_count()
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> u32 {
        self.partition.colour_at(u * self.n() + v)
    }

    pub fn colour_name(&self, u: usize, v: usize) -> &str {
        &self.names[self.colour(u, v) as usize]
    }

    /// Whether `u` and `v` are joined by an arc named `edge` (for graphs built by [`Graph::from_edges`]).
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.colour_name(u, v) == "edge"
    }

    /// Relabel vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut inv = vec![usize::MAX; n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            inv[p] = v;
        }
        if perm.len() != n {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        Self::from_fn(n, |u, v| self.colour_name(inv[u], inv[v]).to_string())
    }
}

/// `α_{k,G}`: tuples are coloured by the arc colours between their entries.
///
/// Loop colours `G(v_i, v_i)` are part of the type, so the result is
/// graph-like even when arc colours do not determine the endpoint cells.
pub fn atomic_types(g: &Graph, k: usize) -> Result<LabelledPartition> {
    let n = g.n();
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    if k == 1 {
        return LabelledPartition::from_labels(n, 1, (0..n).map(|v| g.colour(v, v)));
    }
    let space = TupleSpace::with_cap(n, k, super::tuple::DEFAULT_MAX_TUPLES)?;
    let pairs = all_index_vectors(k, 2);
    let mut buf = vec![0; k];
    let labels: Vec<Vec<u32>> = (0..space.size())
        .map(|idx| {
            space.decode_into(idx, &mut buf);
            pairs.iter().map(|p| g.colour(buf[p[0]], buf[p[1]])).collect()
        })
        .collect();
    LabelledPartition::from_labels(n, k, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{is_graph_like, Comparison};

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn atomic_types_of_small_graphs() {
        assert_eq!(atomic_types(&path3(), 2).unwrap().class_count(), 3);
        assert_eq!(atomic_types(&k3(), 2).unwrap().class_count(), 2);
        let a = atomic_types(&k3(), 3).unwrap();
        assert_eq!(a.colour_of(&[0, 1, 2]).unwrap(), a.colour_of(&[1, 2, 0]).unwrap());
        assert_ne!(a.colour_of(&[0, 1, 2]).unwrap(), a.colour_of(&[0, 0, 2]).unwrap());
        // Equality patterns: all equal, 3 with two equal positions, all distinct.
        assert_eq!(a.class_count(), 5);
        assert_eq!(atomic_types(&path3(), 1).unwrap().class_count(), 1);
    }

    #[test]
    fn atomic_types_project_and_are_graph_like() {
        let a3 = atomic_types(&k3(), 3).unwrap();
        let a2 = atomic_types(&k3(), 2).unwrap();
        assert_eq!(a3.project(2).unwrap().compare(&a2).unwrap(), Comparison::Equivalent);
        for g in [path3(), k3()] {
            for k in 1..=3 {
                assert!(is_graph_like(&atomic_types(&g, k).unwrap()).holds);
            }
        }
    }

    #[test]
    fn rejects_non_rainbows() {
        let p = LabelledPartition::from_fn(2, 2, |t| u32::from(t == [0, 1])).unwrap();
        assert!(matches!(Graph::from_partition(p), Err(Error::NotRainbow(_))));
    }

    #[test]
    fn permute_preserves_structure() {
        let g = path3();
        let h = g.permute(&[1, 0, 2]).unwrap();
        assert!(h.adjacent(1, 0) && h.adjacent(0, 2) && !h.adjacent(1, 2));
    }

    proptest::proptest! {
        #[test]
        fn atomic_types_of_random_rainbows_are_graph_like(n in 1usize..5, c in 2usize..5, seed in 0u64..1000, k in 1usize..4) {
            let g = crate::generators::random_coloured_digraph(n, c, seed).unwrap();
            proptest::prop_assert!(is_graph_like(&atomic_types(&g, k).unwrap()).holds);
        }
    }
}
