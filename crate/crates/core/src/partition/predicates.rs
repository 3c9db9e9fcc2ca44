//! Invariance, consistency and the graph-like predicate.

use serde::{Deserialize, Serialize};

use super::labelled::LabelledPartition;
use super::tuple::{all_index_vectors, TupleSpace};
use crate::error::{Error, Result};

/// A boolean verdict with a description of the first violation found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub holds: bool,
    pub violation: Option<String>,
}

impl PredicateReport {
    pub fn pass() -> Self {
        PredicateReport {
            holds: true,
            violation: None,
        }
    }

    pub fn fail(reason: impl Into<String>) -> Self {
        PredicateReport {
            holds: false,
            violation: Some(reason.into()),
        }
    }
}

/// Checks that `image[idx]`'s colour is a function of `idx`'s colour.
/// Returns the first offending pair of tuple indices.
fn class_function(g: &LabelledPartition, image: impl Fn(usize) -> u32) -> Option<(usize, usize)> {
    let mut seen: Vec<(u32, usize)> = vec![(u32::MAX, 0); g.class_count()];
    for idx in 0..g.len() {
        let c = g.colour_at(idx) as usize;
        let target = image(idx);
        let slot = &mut seen[c];
        if slot.0 == u32::MAX {
            *slot = (target, idx);
        } else if slot.0 != target {
            return Some((slot.1, idx));
        }
    }
    None
}

fn invariance_violation(g: &LabelledPartition) -> Option<String> {
    let space = g.space();
    for p in 0..g.arity().saturating_sub(1) {
        let swapped = |idx: usize| {
            let a = space.digit(idx, p);
            let b = space.digit(idx, p + 1);
            g.colour_at(space.replace(space.replace(idx, p, b), p + 1, a))
        };
        if let Some((u, v)) = class_function(g, swapped) {
            return Some(format!(
                "not invariant under transposition ({}, {}): {:?} and {:?} share a class but their images do not",
                p + 1,
                p + 2,
                space.decode(u),
                space.decode(v)
            ));
        }
    }
    None
}

/// Invariance under `Sym(k)`, checked on the adjacent transpositions.
pub fn is_invariant(g: &LabelledPartition) -> bool {
    invariance_violation(g).is_none()
}

/// `r`-consistency, checked over every `i ∈ [k]^r`.
pub fn is_consistent(g: &LabelledPartition, r: usize) -> Result<bool> {
    let k = g.arity();
    if r == 0 || r > k {
        return Err(Error::InvalidParameter(format!("consistency arity {r} outside 1..={k}")));
    }
    let space = g.space();
    for idx_vec in all_index_vectors(k, r) {
        let image = |idx: usize| {
            let mut full = 0;
            for (s, &pos) in idx_vec.iter().enumerate() {
                full += space.digit(idx, pos) * space.weight(s);
            }
            let last = space.digit(idx, idx_vec[r - 1]);
            for s in r..k {
                full += last * space.weight(s);
            }
            g.colour_at(full)
        };
        if class_function(g, image).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The position of the first entry equal to entry `i`, for each `i`.
fn equality_pattern(space: &TupleSpace, idx: usize, buf: &mut [usize], out: &mut [u8]) {
    space.decode_into(idx, buf);
    for i in 0..buf.len() {
        out[i] = (0..=i).find(|&j| buf[j] == buf[i]).unwrap() as u8;
    }
}

fn equality_violation(g: &LabelledPartition) -> Option<String> {
    let space = g.space();
    let k = g.arity();
    let mut buf = vec![0; k];
    let mut pattern = vec![0u8; k];
    let mut seen: Vec<Option<(Vec<u8>, usize)>> = vec![None; g.class_count()];
    for idx in 0..g.len() {
        equality_pattern(&space, idx, &mut buf, &mut pattern);
        let slot = &mut seen[g.colour_at(idx) as usize];
        match slot {
            None => *slot = Some((pattern.clone(), idx)),
            Some((p, first)) if *p != pattern => {
                return Some(format!(
                    "equality pattern differs within a class: {:?} and {:?}",
                    space.decode(*first),
                    space.decode(idx)
                ))
            }
            _ => {}
        }
    }
    None
}

/// Invariant, `r`-consistent for every `r ≤ k`, and preserving equality patterns.
///
/// Given invariance, consistency for all `r ≤ k` reduces to the single map
/// `u ↦ (u_1, ..., u_{k-1}, u_{k-1})`: every self-map of `[k]` is a product of
/// transpositions and this collapse, and `r`-consistency implies
/// `t`-consistency for `t ≤ r`.
pub fn is_graph_like(g: &LabelledPartition) -> PredicateReport {
    if let Some(v) = invariance_violation(g) {
        return PredicateReport::fail(v);
    }
    let k = g.arity();
    if k >= 2 {
        let space = g.space();
        let collapse = |idx: usize| g.colour_at(space.replace(idx, k - 1, space.digit(idx, k - 2)));
        if let Some((u, v)) = class_function(g, collapse) {
            return PredicateReport::fail(format!(
                "not {k}-consistent: {:?} and {:?} share a class but their collapsed tuples do not",
                space.decode(u),
                space.decode(v)
            ));
        }
    }
    if let Some(v) = equality_violation(g) {
        return PredicateReport::fail(v);
    }
    PredicateReport::pass()
}
