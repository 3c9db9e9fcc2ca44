use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use wllab_core::generators::{named, NamedGraph};
use wllab_core::refine::EngineConfig;
use wllab_core::spas::{
    distinguishes, dominance_report, ep_with, spas_axiom_check, EpOptions, SpasId, SpasLevel, AXIOM_DEFAULT_MAX_N,
};
use wllab_core::{Comparison, Graph};

use crate::failure::Failure;

/// One manifest line: a check and what it should observe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub command: Check,
    pub expect: Expectation,
    /// Failing a required entry makes the suite exit nonzero.
    #[serde(default = "required_default")]
    pub required: bool,
}

fn required_default() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// `compare(lower_k(G), upper_k'(G))` on every corpus graph with `n ≤ max_n`.
    Dominance {
        lower: SpasId,
        lower_k: usize,
        upper: SpasId,
        upper_k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_n: Option<usize>,
    },
    /// Chain, idempotence and orbit checks on every small corpus graph.
    Axioms {
        spas: SpasId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_n: Option<usize>,
    },
    /// Whether `spas_k` separates two graphs, named from the corpus or as
    /// `family:param:...`.
    Distinguishes {
        spas: SpasId,
        k: usize,
        left: String,
        right: String,
    },
    /// EP_k is coherent and the constant tuples are a union of cells.
    Ep {
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_n: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Equivalent,
    Consistent,
    Inconsistent,
    Pass,
    Fail,
    True,
    False,
}

impl Expectation {
    fn met_by(self, observed: Expectation) -> bool {
        match self {
            Expectation::Consistent => matches!(observed, Expectation::Equivalent | Expectation::Consistent),
            other => other == observed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub index: usize,
    pub command: Check,
    pub expect: Expectation,
    pub required: bool,
    pub observed: Expectation,
    pub passed: bool,
    pub detail: Value,
}

impl EntryResult {
    pub fn table_line(&self) -> String {
        let mark = match (self.passed, self.required) {
            (true, _) => "ok",
            (false, true) => "FAIL",
            (false, false) => "fail (optional)",
        };
        format!(
            "{:>3}  {:<16} {:<44} expected {:<12} observed {}",
            self.index,
            mark,
            describe(&self.command),
            label(self.expect),
            label(self.observed)
        )
    }
}

fn label(e: Expectation) -> String {
    serde_json::to_value(e).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn describe(c: &Check) -> String {
    let bound = |m: &Option<usize>| m.map(|n| format!(" (n<={n})")).unwrap_or_default();
    match c {
        Check::Dominance { lower, lower_k, upper, upper_k, max_n } => {
            format!("{lower}_{lower_k} <= {upper}_{upper_k}{}", bound(max_n))
        }
        Check::Axioms { spas, max_n } => format!("axioms {spas}{}", bound(max_n)),
        Check::Distinguishes { spas, k, left, right } => format!("{spas}_{k} separates {left} / {right}"),
        Check::Ep { k, max_n } => format!("EP_{k} coherent{}", bound(max_n)),
    }
}

fn within(corpus: &[NamedGraph], max_n: Option<usize>) -> Vec<NamedGraph> {
    corpus
        .iter()
        .filter(|g| max_n.is_none_or(|m| g.graph.n() <= m))
        .cloned()
        .collect()
}

fn resolve(corpus: &[NamedGraph], name: &str) -> Result<Graph, Failure> {
    if let Some(g) = corpus.iter().find(|g| g.name == name) {
        return Ok(g.graph.clone());
    }
    let mut parts = name.split(':');
    let family = parts.next().unwrap_or_default();
    let params = parts
        .map(|p| p.parse::<usize>().map_err(|_| Failure::Usage(format!("bad graph reference {name:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(named(family, &params)?)
}

pub fn evaluate(
    index: usize,
    entry: &Entry,
    corpus_id: &str,
    corpus: &[NamedGraph],
    cfg: &EngineConfig,
) -> Result<EntryResult, Failure> {
    let (observed, detail) = match &entry.command {
        Check::Dominance { lower, lower_k, upper, upper_k, max_n } => {
            let graphs = within(corpus, *max_n);
            let pair = (SpasLevel::new(*lower, *lower_k), SpasLevel::new(*upper, *upper_k));
            let report = dominance_report(corpus_id, &graphs, &[pair], cfg)?;
            let outcomes = &report.pairs[0].outcomes;
            let observed = if outcomes.iter().all(|o| o.outcome == Comparison::Equivalent) {
                Expectation::Equivalent
            } else if report.pairs[0].consistent {
                Expectation::Consistent
            } else {
                Expectation::Inconsistent
            };
            (observed, serde_json::to_value(&report.pairs[0]).expect("serializable"))
        }
        Check::Axioms { spas, max_n } => {
            let graphs = within(corpus, Some(max_n.unwrap_or(AXIOM_DEFAULT_MAX_N)));
            let mut reports = Vec::new();
            for g in &graphs {
                let report = spas_axiom_check(spas, &g.graph, cfg)?;
                reports.push(json!({ "graph": g.name, "report": report }));
            }
            let ok = reports.iter().all(|r| {
                let r = &r["report"];
                r["chain"] == true && r["idempotence"] == true && r["sch"] == true
            });
            let observed = if ok { Expectation::Pass } else { Expectation::Fail };
            (observed, Value::Array(reports))
        }
        Check::Distinguishes { spas, k, left, right } => {
            let (g, h) = (resolve(corpus, left)?, resolve(corpus, right)?);
            let separated = distinguishes(spas, *k, &g, &h, cfg)?;
            let observed = if separated { Expectation::True } else { Expectation::False };
            (observed, json!({ "distinguishes": separated }))
        }
        Check::Ep { k, max_n } => {
            let mut rows = Vec::new();
            let mut ok = true;
            for g in within(corpus, *max_n) {
                let (coherent, union) = match ep_with(&g.graph, *k, cfg, EpOptions::default()) {
                    Ok(o) => (true, o.diagonal_union_of_cells),
                    Err(wllab_core::Error::NotCoherent(_)) => (false, false),
                    Err(e) => return Err(e.into()),
                };
                ok &= coherent && union;
                rows.push(json!({ "graph": g.name, "coherent": coherent, "diagonal_union_of_cells": union }));
            }
            let observed = if ok { Expectation::Pass } else { Expectation::Fail };
            (observed, Value::Array(rows))
        }
    };
    Ok(EntryResult {
        index,
        command: entry.command.clone(),
        expect: entry.expect,
        required: entry.required,
        passed: entry.expect.met_by(observed),
        observed,
        detail,
    })
}
