use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::iso::sch_oracle;
use super::{spas_apply, SpasId};
use crate::error::{Error, Result};
use crate::generators::NamedGraph;
use crate::partition::{Comparison, Graph};
use crate::refine::EngineConfig;

/// Largest `n` accepted by [`spas_axiom_check`].
pub const AXIOM_DEFAULT_MAX_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpasLevel {
    pub spas: SpasId,
    pub k: usize,
}

impl SpasLevel {
    pub fn new(spas: SpasId, k: usize) -> Self {
        SpasLevel { spas, k }
    }
}

impl std::fmt::Display for SpasLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}_{}", self.spas, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphOutcome {
    pub graph: String,
    pub outcome: Comparison,
}

/// Outcomes of `compare(Y_k(G), X_k'(G))` over a corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub lower: SpasLevel,
    pub upper: SpasLevel,
    pub outcomes: Vec<GraphOutcome>,
    /// No graph gave `FinerLeft` or `Incomparable`.
    pub consistent: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub corpus: String,
    pub pairs: Vec<PairReport>,
}

/// For each `(Y, k, X, k')`, compares `Y_k(G)` with `X_k'(G)` on every graph.
/// Graphs are processed in parallel; the report keeps corpus order.
pub fn dominance_report(
    corpus_id: &str,
    corpus: &[NamedGraph],
    pairs: &[(SpasLevel, SpasLevel)],
    cfg: &EngineConfig,
) -> Result<DominanceReport> {
    let mut out = Vec::with_capacity(pairs.len());
    for &(lower, upper) in pairs {
        let outcomes = corpus
            .par_iter()
            .map(|entry| {
                let y = spas_apply(&lower.spas, &entry.graph, lower.k, cfg)?;
                let x = spas_apply(&upper.spas, &entry.graph, upper.k, cfg)?;
                Ok(GraphOutcome {
                    graph: entry.name.clone(),
                    outcome: y.compare(&x)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let first_bad = outcomes.iter().find(|o| !o.outcome.right_refines());
        let verdict = match first_bad {
            None => format!("no counterexample found on corpus {corpus_id}"),
            Some(o) => format!("counterexample at graph {}", o.graph),
        };
        out.push(PairReport {
            lower,
            upper,
            consistent: first_bad.is_none(),
            verdict,
            outcomes,
        });
    }
    Ok(DominanceReport {
        corpus: corpus_id.to_string(),
        pairs: out,
    })
}

/// Checks of the scheme axioms on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub spas: SpasId,
    pub n: usize,
    /// `X_1 ⪯ X_2 ⪯ … ⪯ X_n`.
    pub chain: bool,
    /// `X_l(X_m(G)) ≈ X_m(G)` for `l ≤ m ≤ n`.
    pub idempotence: bool,
    /// `X_n(G) ≈ Sch(G)` on arcs.
    pub sch: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.chain && self.idempotence && self.sch
    }
}

/// Chain monotonicity, idempotence and `X_n = Sch` for one graph.
pub fn spas_axiom_check(s: &SpasId, g: &Graph, cfg: &EngineConfig) -> Result<AxiomReport> {
    let n = g.n();
    if n > AXIOM_DEFAULT_MAX_N {
        return Err(Error::CapExceeded {
            what: "axiom check vertices",
            requested: n as u128,
            cap: AXIOM_DEFAULT_MAX_N as u128,
        });
    }
    let top = n.max(1);
    let levels = (1..=top).map(|k| spas_apply(s, g, k, cfg)).collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let mut chain = true;
    for k in 1..top {
        let outcome = levels[k - 1].compare(&levels[k])?;
        if !outcome.right_refines() {
            chain = false;
            failures.push(format!("chain: X_{k} vs X_{} is {outcome}", k + 1));
        }
    }
    let mut idempotence = true;
    for m in 1..=top {
        let inner = Graph::from_partition(levels[m - 1].clone())?;
        for l in 1..=m {
            let outer = spas_apply(s, &inner, l, cfg)?;
            let outcome = outer.compare(&levels[m - 1])?;
            if outcome != Comparison::Equivalent {
                idempotence = false;
                failures.push(format!("idempotence: X_{l}(X_{m}) vs X_{m} is {outcome}"));
            }
        }
    }
    let orbits = sch_oracle(g, 2)?;
    let outcome = levels[top - 1].compare(&orbits)?;
    let sch = outcome == Comparison::Equivalent;
    if !sch {
        failures.push(format!("sch: X_{top} vs orbits is {outcome}"));
    }
    Ok(AxiomReport {
        spas: *s,
        n,
        chain,
        idempotence,
        sch,
        failures,
    })
}
