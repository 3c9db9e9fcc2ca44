use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partition::Graph;

/// Largest CFI graph the generator will build.
pub const CFI_VERTEX_CAP: usize = 1 << 12;

/// A CFI graph with the data needed to re-derive and certify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfiGraph {
    pub graph: Graph,
    pub base: Graph,
    /// Twisted base edges as `(u, v)` with `u < v`, sorted.
    pub twisted: Vec<(usize, usize)>,
    /// First vertex of each base vertex's gadget.
    pub gadget_offsets: Vec<usize>,
}

impl CfiGraph {
    /// Number of twisted edges mod 2.
    pub fn parity(&self) -> u8 {
        (self.twisted.len() % 2) as u8
    }

    /// Whether `graph` is exactly the construction over `base` with `twisted`.
    pub fn verify(&self) -> bool {
        cfi_graph(&self.base, &self.twisted).is_ok_and(|g| g.graph == self.graph)
    }
}

/// The untwisted and once-twisted CFI graphs over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfiPair {
    pub untwisted: CfiGraph,
    pub twisted: CfiGraph,
}

impl CfiPair {
    /// True when both members are genuine constructions over the same
    /// connected base and their twist parities differ, which certifies
    /// non-isomorphism.
    pub fn parity_certificate(&self) -> bool {
        self.untwisted.base == self.twisted.base
            && self.untwisted.verify()
            && self.twisted.verify()
            && self.untwisted.parity() != self.twisted.parity()
    }

    pub fn graphs(&self) -> (&Graph, &Graph) {
        (&self.untwisted.graph, &self.twisted.graph)
    }
}

fn neighbours(base: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = base.n();
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let (a, b) = (base.adjacent(u, v), base.adjacent(v, u));
            if a != b {
                return Err(Error::InvalidParameter("CFI base must be undirected".into()));
            }
            if a {
                adj[u].push(v);
            }
        }
    }
    if n == 0 || adj.iter().any(|a| a.len() < 2) {
        return Err(Error::InvalidParameter("CFI base needs minimum degree 2".into()));
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    if seen.contains(&false) {
        return Err(Error::InvalidParameter("CFI base must be connected".into()));
    }
    Ok(adj)
}

/// The CFI graph over `base` with the given base edges twisted.
///
/// The gadget of a vertex `v` of degree `d` lists its `2^(d-1)` middle
/// vertices (even subsets of incident edges, by bitmask) followed by a
/// connector pair `(a_{v,e,0}, a_{v,e,1})` per incident edge, in neighbour
/// order. A middle vertex for subset `S` is adjacent to `a_{v,e,1}` when
/// `e ∈ S` and to `a_{v,e,0}` otherwise. Base edge `{v, w}` joins
/// `a_{v,e,i}` to `a_{w,e,i}`, or to `a_{w,e,1-i}` when twisted.
pub fn cfi_graph(base: &Graph, twisted: &[(usize, usize)]) -> Result<CfiGraph> {
    let adj = neighbours(base)?;
    let n = base.n();
    let mut twist_set = BTreeSet::new();
    for &(u, v) in twisted {
        if u >= n || v >= n || !base.adjacent(u, v) {
            return Err(Error::InvalidParameter(format!("({u}, {v}) is not a base edge")));
        }
        if !twist_set.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidParameter(format!("edge ({u}, {v}) twisted twice")));
        }
    }
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0usize;
    for a in &adj {
        offsets.push(total);
        let d = a.len();
        if d >= usize::BITS as usize - 2 {
            return Err(Error::CapExceeded { what: "CFI vertices", requested: u128::MAX, cap: CFI_VERTEX_CAP as u128 });
        }
        total = total.saturating_add((1usize << (d - 1)) + 2 * d);
    }
    if total > CFI_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "CFI vertices",
            requested: total as u128,
            cap: CFI_VERTEX_CAP as u128,
        });
    }
    let connector = |v: usize, j: usize, bit: usize| offsets[v] + (1 << (adj[v].len() - 1)) + 2 * j + bit;
    let mut edges = Vec::new();
    for (v, a) in adj.iter().enumerate() {
        let d = a.len();
        let evens = (0..1usize << d).filter(|s| s.count_ones() % 2 == 0);
        for (m, subset) in evens.enumerate() {
            for j in 0..d {
                edges.push((offsets[v] + m, connector(v, j, subset >> j & 1)));
            }
        }
        for (j, &w) in a.iter().enumerate() {
            if v > w {
                continue;
            }
            let jw = adj[w].iter().position(|&x| x == v).expect("symmetric adjacency");
            let flip = usize::from(twist_set.contains(&(v, w)));
            for bit in 0..2 {
                edges.push((connector(v, j, bit), connector(w, jw, bit ^ flip)));
            }
        }
    }
    Ok(CfiGraph {
        graph: Graph::from_edges(total, &edges)?,
        base: base.clone(),
        twisted: twist_set.into_iter().collect(),
        gadget_offsets: offsets,
    })
}

/// Untwisted and once-twisted CFI graphs; the twist sits on the first base
/// edge in lexicographic order.
pub fn cfi_pair(base: &Graph) -> Result<CfiPair> {
    let untwisted = cfi_graph(base, &[])?;
    let n = base.n();
    let first = (0..n)
        .tuple_combinations()
        .find(|&(u, v)| base.adjacent(u, v))
        .expect("connected base with an edge");
    let twisted = cfi_graph(base, &[first])?;
    Ok(CfiPair { untwisted, twisted })
}
