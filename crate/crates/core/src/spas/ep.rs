use crate::coherent::{intersection_numbers, CoherentConfiguration};
use crate::error::{Error, Result};
use crate::partition::{Graph, LabelledPartition, TupleSpace};
use crate::refine::{fixed_point, EngineConfig, OperatorSpec};

/// Largest `n` accepted at `k = 2` without [`EpOptions::allow_large`].
pub const EP_DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, Default)]
pub struct EpOptions {
    /// Lift the default `k ≤ 2`, `n ≤ 6` limit; the tuple cap still applies.
    pub allow_large: bool,
}

#[derive(Debug, Clone)]
pub struct EpOutput {
    pub configuration: CoherentConfiguration,
    /// Colour count of the stabilized configuration on `V^k`.
    pub inner_classes: usize,
    /// Whether the constant tuples form a union of cells of that configuration.
    pub diagonal_union_of_cells: bool,
    /// Refining rounds of the stabilization on `V^k`.
    pub iterations: usize,
}

/// `EP_k(G)` as a coherent configuration on `V`.
pub fn ep(g: &Graph, k: usize, cfg: &EngineConfig) -> Result<CoherentConfiguration> {
    ep_with(g, k, cfg, EpOptions::default()).map(|o| o.configuration)
}

/// `EP_k(G)` with diagnostics.
///
/// Pairs `(u⃗, v⃗)` of `k`-tuples are coloured by `(G(u_1,v_1), …, G(u_k,v_k))`,
/// with an extra marker when `u⃗ = v⃗` is a constant tuple. The result is
/// stabilized by 2-dimensional WL on the vertex set `V^k` and read back
/// along `u ↦ (u, …, u)`.
pub fn ep_with(g: &Graph, k: usize, cfg: &EngineConfig, opts: EpOptions) -> Result<EpOutput> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let n = g.n();
    if !opts.allow_large && k > 2 {
        return Err(Error::CapExceeded { what: "EP arity", requested: k as u128, cap: 2 });
    }
    if !opts.allow_large && k == 2 && n > EP_DEFAULT_MAX_N {
        return Err(Error::CapExceeded {
            what: "EP vertices at k = 2",
            requested: n as u128,
            cap: EP_DEFAULT_MAX_N as u128,
        });
    }
    let outer = TupleSpace::with_cap(n, k, cfg.max_tuples)?;
    let big_n = outer.size();
    TupleSpace::with_cap(big_n, 2, cfg.max_tuples)?;

    let constant: Vec<usize> = (0..n).map(|u| outer.encode(&vec![u; k])).collect();
    let mut is_constant = vec![false; big_n];
    for &c in &constant {
        is_constant[c] = true;
    }
    let tuples: Vec<Vec<usize>> = (0..big_n).map(|i| outer.decode(i)).collect();
    let lifted = LabelledPartition::from_fn(big_n, 2, |pair: &[usize]| {
        let (a, b) = (&tuples[pair[0]], &tuples[pair[1]]);
        let mut label: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| g.colour(x, y)).collect();
        label.push(u32::from(pair[0] == pair[1] && is_constant[pair[0]]));
        label
    })?;
    let fixed = fixed_point(&OperatorSpec::wl(2, 1), &lifted, cfg)?;
    let stable = fixed.partition;

    let diag = |i: usize| stable.colour_at(i * big_n + i);
    let mut inside = std::collections::BTreeSet::new();
    let mut outside = std::collections::BTreeSet::new();
    for i in 0..big_n {
        if is_constant[i] { &mut inside } else { &mut outside }.insert(diag(i));
    }
    let diagonal_union_of_cells = inside.is_disjoint(&outside);

    let restricted = LabelledPartition::from_labels(
        n,
        2,
        (0..n * n).map(|i| stable.colour_at(constant[i / n] * big_n + constant[i % n])),
    )?;
    let graph = Graph::from_partition(restricted)?;
    let configuration = intersection_numbers(&graph)?;
    Ok(EpOutput {
        configuration,
        inner_classes: stable.class_count(),
        diagonal_union_of_cells,
        iterations: fixed.iterations,
    })
}
