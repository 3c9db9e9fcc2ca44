use std::collections::HashMap;

use rayon::prelude::*;

use crate::partition::{injective_index_vectors, LabelledPartition, TupleSpace};

/// Offsets of `v<i, x>` relative to `v` with the `i`-positions zeroed,
/// indexed by `[i][x]` for `i ∈ [k]^(r)` and `x ∈ V^r`.
pub(super) struct Substitutions {
    pub index_vectors: Vec<Vec<usize>>,
    pub offsets: Vec<Vec<usize>>,
}

impl Substitutions {
    pub fn new(space: &TupleSpace, r: usize) -> Self {
        let index_vectors = injective_index_vectors(space.arity(), r);
        let small = TupleSpace::new(space.n(), r).expect("r ≥ 1");
        let offsets = index_vectors
            .iter()
            .map(|iv| {
                (0..small.size())
                    .map(|x| {
                        iv.iter()
                            .enumerate()
                            .map(|(s, &p)| small.digit(x, s) * space.weight(p))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Substitutions {
            index_vectors,
            offsets,
        }
    }

    /// `idx` with the positions of index vector `j` set to vertex 0.
    #[inline]
    pub fn base(&self, space: &TupleSpace, idx: usize, j: usize) -> usize {
        self.index_vectors[j]
            .iter()
            .fold(idx, |acc, &p| acc - space.digit(idx, p) * space.weight(p))
    }
}

/// Interns signatures in tuple order, so ids come out canonical.
pub(super) fn intern_signatures(g: &LabelledPartition, signatures: Vec<Vec<u32>>) -> LabelledPartition {
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(g.class_count() * 2);
    let colours: Vec<u32> = signatures
        .into_iter()
        .map(|s| {
            let next = ids.len() as u32;
            *ids.entry(s).or_insert(next)
        })
        .collect();
    let count = ids.len();
    LabelledPartition::from_canonical(g.n(), g.arity(), colours, count)
}

/// `WL_{k,r}`: old colour plus the multiset over `x ∈ V^r` of the colour
/// vectors `(γ(v<i, x>))_{i ∈ [k]^(r)}`.
pub(super) fn wl_signatures(g: &LabelledPartition, r: usize) -> LabelledPartition {
    let space = g.space();
    let subs = Substitutions::new(&space, r);
    let m = subs.index_vectors.len();
    let xs = subs.offsets.first().map_or(0, Vec::len);
    let colours = g.colours();
    let signatures: Vec<Vec<u32>> = (0..space.size())
        .into_par_iter()
        .map(|idx| {
            let bases: Vec<usize> = (0..m).map(|j| subs.base(&space, idx, j)).collect();
            let mut rows: Vec<Vec<u32>> = (0..xs)
                .map(|x| (0..m).map(|j| colours[bases[j] + subs.offsets[j][x]]).collect())
                .collect();
            rows.sort_unstable();
            let mut sig = Vec::with_capacity(1 + m * xs);
            sig.push(colours[idx]);
            for row in rows {
                sig.extend(row);
            }
            sig
        })
        .collect();
    intern_signatures(g, signatures)
}

/// `C_{k,r}`: old colour plus, for each `i ∈ [k]^(r)`, the multiset of
/// colours `γ(v<i, x>)` over `x ∈ V^r`.
pub(super) fn c_signatures(g: &LabelledPartition, r: usize) -> LabelledPartition {
    let space = g.space();
    let subs = Substitutions::new(&space, r);
    let m = subs.index_vectors.len();
    let colours = g.colours();
    let signatures: Vec<Vec<u32>> = (0..space.size())
        .into_par_iter()
        .map(|idx| {
            let mut sig = vec![colours[idx]];
            for j in 0..m {
                let base = subs.base(&space, idx, j);
                let start = sig.len();
                sig.extend(subs.offsets[j].iter().map(|&o| colours[base + o]));
                sig[start..].sort_unstable();
            }
            sig
        })
        .collect();
    intern_signatures(g, signatures)
}
