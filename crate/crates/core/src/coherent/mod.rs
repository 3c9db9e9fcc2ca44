//! Rainbows, coherent configurations and their adjacency algebras.

mod basis;
mod iso;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Matrix};
use crate::partition::{Graph, LabelledPartition, PredicateReport};

pub use basis::{adjacency_law_holds, standard_basis, StandardBasis};
pub use iso::{algebraic_isomorphism, algebraic_isomorphism_with, DEFAULT_COLOUR_CAP};

/// Checks that the diagonal is a union of classes and that the colour of
/// `(u, v)` determines the colour of `(v, u)`.
pub fn validate_rainbow(g: &LabelledPartition) -> PredicateReport {
    if g.arity() != 2 {
        return PredicateReport::fail(format!("arity {} is not 2", g.arity()));
    }
    let n = g.n();
    let count = g.class_count();
    let mut diagonal: Vec<Option<(bool, usize)>> = vec![None; count];
    let mut reverse: Vec<Option<(u32, usize)>> = vec![None; count];
    for idx in 0..g.len() {
        let (u, v) = (idx / n, idx % n);
        let c = g.colour_at(idx) as usize;
        match diagonal[c] {
            None => diagonal[c] = Some((u == v, idx)),
            Some((d, first)) if d != (u == v) => {
                return PredicateReport::fail(format!(
                    "class of ({}, {}) mixes loops and non-loops, e.g. ({u}, {v})",
                    first / n,
                    first % n
                ))
            }
            _ => {}
        }
        let back = g.colour_at(v * n + u);
        match reverse[c] {
            None => reverse[c] = Some((back, idx)),
            Some((b, first)) if b != back => {
                return PredicateReport::fail(format!(
                    "({}, {}) and ({u}, {v}) share a class but their reverses do not",
                    first / n,
                    first % n
                ))
            }
            _ => {}
        }
    }
    PredicateReport::pass()
}

/// Witness that some triangle count is not constant on a colour class.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("colour {kappa}: arcs {first:?} and {second:?} have {first_count} vs {second_count} ({sigma}, {tau})-paths")]
pub struct NotCoherent {
    pub sigma: u32,
    pub tau: u32,
    pub kappa: u32,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub first_count: u32,
    pub second_count: u32,
}

impl From<NotCoherent> for Error {
    fn from(e: NotCoherent) -> Self {
        Error::NotCoherent(e.to_string())
    }
}

/// How thoroughly [`intersection_numbers_with`] checks constancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntersectionMode {
    /// Count on every arc. This is the only mode that certifies coherence.
    #[default]
    Verified,
    /// Count on one representative arc per colour. Unsound: for benchmarking only.
    RepresentativeOnly,
}

/// A rainbow with constant triangle counts `p[σ][τ][κ]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherentConfiguration {
    graph: Graph,
    rank: usize,
    table: Vec<u32>,
    transpose: Vec<u32>,
    cells: Vec<Vec<usize>>,
    verified: bool,
}

/// Computes and verifies the intersection numbers of `g`.
pub fn intersection_numbers(g: &Graph) -> std::result::Result<CoherentConfiguration, NotCoherent> {
    intersection_numbers_with(g, IntersectionMode::Verified)
}

pub fn intersection_numbers_with(
    g: &Graph,
    mode: IntersectionMode,
) -> std::result::Result<CoherentConfiguration, NotCoherent> {
    let n = g.n();
    let r = g.class_count();
    let mut table = vec![0u32; r * r * r];
    let reps = g.partition().representatives();
    for (kappa, &idx) in reps.iter().enumerate() {
        let (u, v) = (idx / n, idx % n);
        for x in 0..n {
            let (s, t) = (g.colour(u, x) as usize, g.colour(x, v) as usize);
            table[(s * r + t) * r + kappa] += 1;
        }
    }
    if mode == IntersectionMode::Verified {
        let mut counts = vec![0u32; r * r];
        let mut touched = Vec::with_capacity(n);
        for u in 0..n {
            for v in 0..n {
                let kappa = g.colour(u, v) as usize;
                touched.clear();
                for x in 0..n {
                    let slot = g.colour(u, x) as usize * r + g.colour(x, v) as usize;
                    if counts[slot] == 0 {
                        touched.push(slot);
                    }
                    counts[slot] += 1;
                }
                // Both count vectors sum to n, so agreeing on the touched slots suffices.
                let mismatch = touched
                    .iter()
                    .copied()
                    .find(|&slot| counts[slot] != table[slot * r + kappa]);
                if let Some(slot) = mismatch {
                    let rep = reps[kappa];
                    return Err(NotCoherent {
                        sigma: (slot / r) as u32,
                        tau: (slot % r) as u32,
                        kappa: kappa as u32,
                        first: (rep / n, rep % n),
                        second: (u, v),
                        first_count: table[slot * r + kappa],
                        second_count: counts[slot],
                    });
                }
                for &slot in &touched {
                    counts[slot] = 0;
                }
            }
        }
    }
    let transpose = reps
        .iter()
        .map(|&idx| g.colour(idx % n, idx / n))
        .collect();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of_loop: Vec<Option<usize>> = vec![None; r];
    for v in 0..n {
        let c = g.colour(v, v) as usize;
        let id = *cell_of_loop[c].get_or_insert_with(|| {
            cells.push(Vec::new());
            cells.len() - 1
        });
        cells[id].push(v);
    }
    Ok(CoherentConfiguration {
        graph: g.clone(),
        rank: r,
        table,
        transpose,
        cells,
        verified: mode == IntersectionMode::Verified,
    })
}

impl CoherentConfiguration {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of colours.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `p_{στ}^κ`
    #[inline]
    pub fn p(&self, sigma: u32, tau: u32, kappa: u32) -> u32 {
        let r = self.rank;
        self.table[(sigma as usize * r + tau as usize) * r + kappa as usize]
    }

    /// The colour of `(v, u)` for arcs `(u, v)` of colour `sigma`.
    pub fn transpose_of(&self, sigma: u32) -> u32 {
        self.transpose[sigma as usize]
    }

    pub fn is_loop_colour(&self, sigma: u32) -> bool {
        let idx = self.graph.partition().representatives()[sigma as usize];
        let n = self.n();
        idx / n == idx % n
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.graph.partition().class_sizes()
    }

    /// Whether the intersection numbers were checked on every arc.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// The cells, i.e. the classes of loop colours, ordered by least vertex.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// `A_σ` for each colour `σ`, in colour order.
    pub fn adjacency_matrices<F: Field>(&self, f: &F) -> Vec<Matrix<F>> {
        let n = self.n();
        (0..self.rank as u32)
            .map(|s| Matrix::indicator(f, n, n, |u, v| self.graph.colour(u, v) == s))
            .collect()
    }
}

/// Cells of a configuration.
pub fn cells(c: &CoherentConfiguration) -> Vec<Vec<usize>> {
    c.cells().to_vec()
}

/// The restriction to `X²` for a non-empty union of cells `X`.
pub fn restrict(c: &CoherentConfiguration, x: &[usize]) -> Result<CoherentConfiguration> {
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.is_empty() || xs.iter().any(|&v| v >= c.n()) {
        return Err(Error::NotUnionOfCells);
    }
    for cell in c.cells() {
        let inside = cell.iter().filter(|v| xs.binary_search(v).is_ok()).count();
        if inside != 0 && inside != cell.len() {
            return Err(Error::NotUnionOfCells);
        }
    }
    let g = &c.graph;
    let sub = Graph::from_fn(xs.len(), |i, j| g.colour_name(xs[i], xs[j]).to_string())?;
    Ok(intersection_numbers(&sub)?)
}

/// Colours whose class size is divisible by `p`.
pub fn radical_support(c: &CoherentConfiguration, p: u64) -> Result<Vec<u32>> {
    if !crate::field::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(c.class_sizes()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s as u64 % p == 0)
        .map(|(i, _)| i as u32)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Semisimplicity {
    Guaranteed,
    Unknown,
}

/// Guaranteed iff the characteristic is 0 or exceeds `|V|`.
pub fn is_semisimple_guaranteed(c: &CoherentConfiguration, f: FieldSpec) -> Semisimplicity {
    match f.characteristic() {
        0 => Semisimplicity::Guaranteed,
        p if p > c.n() as u64 => Semisimplicity::Guaranteed,
        _ => Semisimplicity::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{atomic_types, is_consistent, is_graph_like};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| if u == v { "loop" } else { "edge" }).unwrap()
    }

    #[test]
    fn rainbow_examples() {
        assert!(validate_rainbow(cycle(4).partition()).holds);
        let merged = LabelledPartition::from_fn(2, 2, |t| u32::from(t == [1, 1])).unwrap();
        assert!(!validate_rainbow(&merged).holds);
        let directed = LabelledPartition::from_fn(3, 2, |t| match (t[0], t[1]) {
            (a, b) if a == b => 0,
            (0, 1) | (0, 2) => 1,
            (1, 0) => 2,
            _ => 3,
        })
        .unwrap();
        assert!(!validate_rainbow(&directed).holds);
    }

    #[test]
    fn pentagon_numbers() {
        let c = intersection_numbers(&cycle(5)).unwrap();
        let g = c.graph();
        let (d1, d2) = (g.colour(0, 1), g.colour(0, 2));
        assert_eq!(c.p(d1, d1, d2), 1);
        assert_eq!(c.p(d1, d1, d1), 0);
        assert_eq!(c.cells(), &[vec![0, 1, 2, 3, 4]]);
        assert_eq!(radical_support(&c, 5).unwrap(), vec![0, 1, 2]);
        assert!(radical_support(&c, 3).unwrap().is_empty());
        assert!(radical_support(&c, 29).unwrap().is_empty());
        assert_eq!(restrict(&c, &[0, 1, 2, 3, 4]).unwrap(), c);
        assert_eq!(restrict(&c, &[]), Err(Error::NotUnionOfCells));
        assert_eq!(restrict(&c, &[0]), Err(Error::NotUnionOfCells));
    }

    #[test]
    fn complete_graph_numbers() {
        for n in 2..6 {
            let c = intersection_numbers(&complete(n)).unwrap();
            let off = c.graph().colour(0, 1);
            assert_eq!(c.p(off, off, off) as usize, n - 2);
        }
    }

    #[test]
    fn path_atomic_partition_is_not_coherent() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let w = intersection_numbers(&p3).unwrap_err();
        assert_ne!(w.first_count, w.second_count);
        let rep_only = intersection_numbers_with(&p3, IntersectionMode::RepresentativeOnly).unwrap();
        assert!(!rep_only.is_verified());
    }

    #[test]
    fn semisimplicity_guarantee() {
        let c = intersection_numbers(&cycle(5)).unwrap();
        assert_eq!(is_semisimple_guaranteed(&c, FieldSpec::Rationals), Semisimplicity::Guaranteed);
        assert_eq!(is_semisimple_guaranteed(&c, FieldSpec::Prime(7)), Semisimplicity::Guaranteed);
        assert_eq!(is_semisimple_guaranteed(&c, FieldSpec::Prime(2)), Semisimplicity::Unknown);
    }

    #[test]
    fn coherent_configurations_are_graph_like() {
        for g in [cycle(5), cycle(4), complete(4)] {
            assert!(intersection_numbers(&g).is_ok());
            assert!(is_graph_like(g.partition()).holds);
            assert!(is_consistent(g.partition(), 1).unwrap());
            assert!(is_graph_like(&atomic_types(&g, 2).unwrap()).holds);
        }
    }
}
