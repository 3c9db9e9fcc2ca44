//! Approximation schemes built from the refinement operators, the EP_k
//! construction, an orbit oracle, and dominance reporting.

mod ep;
mod iso;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::generators::disjoint_union;
use crate::partition::{atomic_types, Graph, LabelledPartition, TupleSpace};
use crate::refine::{fixed_point, EngineConfig, Family, OperatorSpec};

pub use ep::{ep, ep_with, EpOptions, EpOutput, EP_DEFAULT_MAX_N};
pub use iso::{
    are_isomorphic, automorphisms, find_isomorphism, sch_oracle, sch_oracle_with, IsoBudget, SCH_DEFAULT_MAX_N,
};
pub use report::{
    dominance_report, spas_axiom_check, AxiomReport, DominanceReport, GraphOutcome, PairReport, SpasLevel,
    AXIOM_DEFAULT_MAX_N,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpasFamily {
    Wl,
    C,
    Im,
    Imt,
    Imr,
    Ep,
}

/// A scheme `k ↦ X_k(G)`, identified by operator family and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SpasId {
    pub family: SpasFamily,
    pub r: usize,
    pub field: FieldSpec,
}

impl SpasId {
    pub fn new(family: SpasFamily, r: usize, field: FieldSpec) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        field.validate()?;
        Ok(SpasId { family, r, field })
    }

    pub fn wl() -> Self {
        Self::wl_r(1)
    }

    pub fn wl_r(r: usize) -> Self {
        SpasId { family: SpasFamily::Wl, r, field: FieldSpec::Rationals }
    }

    pub fn c() -> Self {
        Self::c_r(1)
    }

    pub fn c_r(r: usize) -> Self {
        SpasId { family: SpasFamily::C, r, field: FieldSpec::Rationals }
    }

    pub fn im(field: FieldSpec) -> Self {
        SpasId { family: SpasFamily::Im, r: 1, field }
    }

    pub fn imt(field: FieldSpec) -> Self {
        SpasId { family: SpasFamily::Imt, r: 1, field }
    }

    pub fn imr(r: usize, field: FieldSpec) -> Self {
        SpasId { family: SpasFamily::Imr, r, field }
    }

    pub fn ep() -> Self {
        SpasId { family: SpasFamily::Ep, r: 1, field: FieldSpec::Rationals }
    }

    /// The arity-`k` operator behind this scheme; `None` for EP.
    pub fn operator(&self, k: usize) -> Result<Option<OperatorSpec>> {
        let family = match self.family {
            SpasFamily::Wl => Family::Wl,
            SpasFamily::C => Family::C,
            SpasFamily::Im => Family::Im,
            SpasFamily::Imt => Family::Imt,
            SpasFamily::Imr => Family::Imr,
            SpasFamily::Ep => return Ok(None),
        };
        OperatorSpec::new(family, k, self.r, self.field).map(Some)
    }
}

impl fmt::Display for SpasId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = if self.r == 1 { String::new() } else { format!("_r{}", self.r) };
        match self.family {
            SpasFamily::Wl => write!(f, "WL{suffix}"),
            SpasFamily::C => write!(f, "C{suffix}"),
            SpasFamily::Im => write!(f, "IM({})", self.field),
            SpasFamily::Imt => write!(f, "IMt({})", self.field),
            SpasFamily::Imr => write!(f, "IMr{}({})", self.r, self.field),
            SpasFamily::Ep => write!(f, "EP"),
        }
    }
}

impl FromStr for SpasId {
    type Err = Error;

    /// Accepts `WL`, `WL_r2`, `C`, `C_r3`, `IM(q)`, `IMt(gf:2)`, `IMr2(q)`, `EP`
    /// in any letter case.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown scheme {s:?}"));
        let lower = s.trim().to_ascii_lowercase();
        let (head, field) = match lower.split_once('(') {
            Some((head, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                (head.to_string(), Some(inner.parse::<FieldSpec>()?))
            }
            None => (lower.clone(), None),
        };
        let parse_r = |digits: &str| -> Result<usize> { digits.parse().map_err(|_| bad()) };
        let id = match (head.as_str(), field) {
            ("wl", None) => SpasId::wl(),
            ("c", None) => SpasId::c(),
            ("ep", None) => SpasId::ep(),
            ("im", Some(f)) => SpasId::im(f),
            ("imt", Some(f)) => SpasId::imt(f),
            (h, Some(f)) if h.starts_with("imr") => SpasId::imr(parse_r(&h[3..])?, f),
            (h, None) if h.starts_with("wl_r") => SpasId::wl_r(parse_r(&h[4..])?),
            (h, None) if h.starts_with("c_r") => SpasId::c_r(parse_r(&h[3..])?),
            _ => return Err(bad()),
        };
        SpasId::new(id.family, id.r, id.field)
    }
}

impl From<SpasId> for String {
    fn from(id: SpasId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for SpasId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Result of one scheme evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpasRun {
    pub partition: LabelledPartition,
    /// Refining rounds of the underlying fixed-point computation.
    pub iterations: usize,
}

/// `X_k(G)`: `G` itself for `k = 1`, otherwise the 2-projection of the
/// arity-`k` fixed point started from the atomic types `α_{k,G}`. EP is
/// computed directly for every `k`.
pub fn spas_apply(s: &SpasId, g: &Graph, k: usize, cfg: &EngineConfig) -> Result<LabelledPartition> {
    spas_run(s, g, k, cfg, EpOptions::default()).map(|run| run.partition)
}

/// Like [`spas_apply`], also reporting the round count.
pub fn spas_run(s: &SpasId, g: &Graph, k: usize, cfg: &EngineConfig, ep_opts: EpOptions) -> Result<SpasRun> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let Some(spec) = s.operator(k)? else {
        let out = ep_with(g, k, cfg, ep_opts)?;
        return Ok(SpasRun {
            partition: out.configuration.graph().partition().clone(),
            iterations: out.iterations,
        });
    };
    if k == 1 {
        return Ok(SpasRun { partition: g.partition().clone(), iterations: 0 });
    }
    TupleSpace::with_cap(g.n(), k, cfg.max_tuples)?;
    let fixed = fixed_point(&spec, &atomic_types(g, k)?, cfg)?;
    Ok(SpasRun {
        partition: fixed.partition.project(2)?,
        iterations: fixed.iterations,
    })
}

/// Whether `X_k` separates `g` from `h`, judged on one run over `g ⊎ h`.
pub fn distinguishes(s: &SpasId, k: usize, g: &Graph, h: &Graph, cfg: &EngineConfig) -> Result<bool> {
    if g.n() != h.n() {
        return Ok(true);
    }
    let union = disjoint_union(g, h)?;
    let x = spas_apply(s, &union, k, cfg)?;
    let a = g.n();
    let side = |offset: usize| {
        let mut colours: Vec<u32> = (0..a)
            .flat_map(|u| (0..a).map(move |v| (u + offset, v + offset)))
            .map(|(u, v)| x.colour_at(u * x.n() + v))
            .collect();
        colours.sort_unstable();
        colours
    };
    Ok(side(0) != side(a))
}
