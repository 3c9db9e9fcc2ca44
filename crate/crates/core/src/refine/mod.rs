//! Refinement operators on labelled partitions and the fixed-point engine.

mod canon;
mod hat;
mod im;
mod wl;

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, SimilarityConfig};
use crate::partition::{LabelledPartition, TupleSpace, DEFAULT_MAX_TUPLES};

pub use canon::canonical_form;
pub use hat::hat_extension;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Wl,
    C,
    Im,
    Imt,
    Imr,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Wl => "wl",
            Family::C => "c",
            Family::Im => "im",
            Family::Imt => "imt",
            Family::Imr => "imr",
        }
    }

    pub fn uses_field(self) -> bool {
        matches!(self, Family::Im | Family::Imt | Family::Imr)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wl" => Ok(Family::Wl),
            "c" => Ok(Family::C),
            "im" => Ok(Family::Im),
            "imt" => Ok(Family::Imt),
            "imr" => Ok(Family::Imr),
            other => Err(Error::Parse(format!("unknown operator family {other:?}"))),
        }
    }
}

/// One refinement operator: family, arity `k`, substitution arity `r` and field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub family: Family,
    pub k: usize,
    pub r: usize,
    pub field: FieldSpec,
}

impl OperatorSpec {
    pub fn new(family: Family, k: usize, r: usize, field: FieldSpec) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        if r == 0 {
            return Err(Error::InvalidParameter("substitution arity r must be at least 1".into()));
        }
        field.validate()?;
        Ok(OperatorSpec { family, k, r, field })
    }

    pub fn wl(k: usize, r: usize) -> Self {
        OperatorSpec::new(Family::Wl, k, r, FieldSpec::Rationals).expect("k, r ≥ 1")
    }

    pub fn c(k: usize, r: usize) -> Self {
        OperatorSpec::new(Family::C, k, r, FieldSpec::Rationals).expect("k, r ≥ 1")
    }

    pub fn im(k: usize, field: FieldSpec) -> Self {
        OperatorSpec::new(Family::Im, k, 1, field).expect("k ≥ 1")
    }

    pub fn imt(k: usize, field: FieldSpec) -> Self {
        OperatorSpec::new(Family::Imt, k, 1, field).expect("k ≥ 1")
    }

    pub fn imr(k: usize, r: usize, field: FieldSpec) -> Self {
        OperatorSpec::new(Family::Imr, k, r, field).expect("k, r ≥ 1")
    }

    /// Whether the operator is the identity at this arity.
    pub fn is_identity(&self) -> bool {
        match self.family {
            Family::Wl | Family::C => self.k <= self.r,
            Family::Im | Family::Imt => self.k <= 2,
            Family::Imr => self.k <= 2 * self.r,
        }
    }

    /// The same operator at another arity.
    pub fn with_k(&self, k: usize) -> Self {
        OperatorSpec { k, ..*self }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Wl | Family::C => write!(f, "{}[k={},r={}]", self.family, self.k, self.r),
            Family::Im | Family::Imt => write!(f, "{}[k={},{}]", self.family, self.k, self.field),
            Family::Imr => write!(f, "{}[k={},r={},{}]", self.family, self.k, self.r, self.field),
        }
    }
}

/// Engine limits and knobs shared by all operators.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub max_tuples: usize,
    pub similarity: SimilarityConfig,
    /// Leaf budget for canonical forms of colour matrices in the IM family.
    pub canon_leaf_budget: usize,
    pub deadline: Option<Instant>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_tuples: DEFAULT_MAX_TUPLES,
            similarity: SimilarityConfig::default(),
            canon_leaf_budget: 5040,
            deadline: None,
        }
    }
}

impl EngineConfig {
    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_space(&self, g: &LabelledPartition) -> Result<TupleSpace> {
        TupleSpace::with_cap(g.n(), g.arity(), self.max_tuples)
    }
}

/// One application of `spec` to `g`. Identity regimes borrow the input.
pub fn step<'a>(
    spec: &OperatorSpec,
    g: &'a LabelledPartition,
    cfg: &EngineConfig,
) -> Result<Cow<'a, LabelledPartition>> {
    if g.arity() != spec.k {
        return Err(Error::ArityMismatch {
            expected: spec.k,
            found: g.arity(),
        });
    }
    if spec.is_identity() {
        return Ok(Cow::Borrowed(g));
    }
    cfg.check_space(g)?;
    cfg.check_deadline()?;
    let out = match spec.family {
        Family::Wl => wl::wl_signatures(g, spec.r),
        Family::C => wl::c_signatures(g, spec.r),
        Family::Im => im::im_step(g, spec.field, 1, cfg)?,
        Family::Imr => im::im_step(g, spec.field, spec.r, cfg)?,
        Family::Imt => im::imt_step(g, spec.field, cfg)?,
    };
    Ok(Cow::Owned(out))
}

/// `WL_{k,r}`, where `k` is the arity of `g`.
pub fn wl_step(g: &LabelledPartition, r: usize) -> Result<Cow<'_, LabelledPartition>> {
    step(&OperatorSpec::new(Family::Wl, g.arity(), r, FieldSpec::Rationals)?, g, &EngineConfig::default())
}

/// `C_{k,r}`, where `k` is the arity of `g`.
pub fn c_step(g: &LabelledPartition, r: usize) -> Result<Cow<'_, LabelledPartition>> {
    step(&OperatorSpec::new(Family::C, g.arity(), r, FieldSpec::Rationals)?, g, &EngineConfig::default())
}

pub fn im_step<'a>(g: &'a LabelledPartition, f: FieldSpec, cfg: &EngineConfig) -> Result<Cow<'a, LabelledPartition>> {
    step(&OperatorSpec::new(Family::Im, g.arity(), 1, f)?, g, cfg)
}

pub fn imt_step<'a>(g: &'a LabelledPartition, f: FieldSpec, cfg: &EngineConfig) -> Result<Cow<'a, LabelledPartition>> {
    step(&OperatorSpec::new(Family::Imt, g.arity(), 1, f)?, g, cfg)
}

pub fn im_r_step<'a>(
    g: &'a LabelledPartition,
    f: FieldSpec,
    r: usize,
    cfg: &EngineConfig,
) -> Result<Cow<'a, LabelledPartition>> {
    step(&OperatorSpec::new(Family::Imr, g.arity(), r, f)?, g, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointResult {
    pub partition: LabelledPartition,
    /// Rounds that refined the partition.
    pub iterations: usize,
    /// Class counts, starting with the input.
    pub history: Vec<usize>,
    /// The operator is the identity at this arity.
    pub identity: bool,
}

/// Iterates `spec` from `g` until the class structure stops changing.
pub fn fixed_point(spec: &OperatorSpec, g: &LabelledPartition, cfg: &EngineConfig) -> Result<FixedPointResult> {
    let mut current = g.clone();
    let mut history = vec![current.class_count()];
    let mut iterations = 0;
    loop {
        let next = step(spec, &current, cfg)?;
        let identity = matches!(next, Cow::Borrowed(_));
        // A step always refines its input, so equal class counts mean ≈.
        if identity || next.class_count() == current.class_count() {
            return Ok(FixedPointResult {
                partition: current,
                iterations,
                history,
                identity,
            });
        }
        current = next.into_owned();
        history.push(current.class_count());
        iterations += 1;
    }
}

/// Whether one more application of `spec` leaves the classes of `g` unchanged.
pub fn is_stable(spec: &OperatorSpec, g: &LabelledPartition, cfg: &EngineConfig) -> Result<bool> {
    Ok(step(spec, g, cfg)?.class_count() == g.class_count())
}

/// The signature of `WL_{k,r}` is constant on every class.
pub fn is_wl_stable(g: &LabelledPartition, r: usize) -> Result<bool> {
    is_stable(&OperatorSpec::new(Family::Wl, g.arity(), r, FieldSpec::Rationals)?, g, &EngineConfig::default())
}

/// The signature of `C_{k,r}` is constant on every class.
pub fn is_c_stable(g: &LabelledPartition, r: usize) -> Result<bool> {
    is_stable(&OperatorSpec::new(Family::C, g.arity(), r, FieldSpec::Rationals)?, g, &EngineConfig::default())
}

/// Every tuple's χ-matrix tuples are similar, slot by slot, to those of every
/// other tuple in its class.
pub fn is_im_stable(g: &LabelledPartition, f: FieldSpec, cfg: &EngineConfig) -> Result<bool> {
    is_stable(&OperatorSpec::new(Family::Im, g.arity(), 1, f)?, g, cfg)
}

/// As [`is_im_stable`] with one witness across all colour vectors.
pub fn is_imt_stable(g: &LabelledPartition, f: FieldSpec, cfg: &EngineConfig) -> Result<bool> {
    is_stable(&OperatorSpec::new(Family::Imt, g.arity(), 1, f)?, g, cfg)
}

pub fn is_imr_stable(g: &LabelledPartition, f: FieldSpec, r: usize, cfg: &EngineConfig) -> Result<bool> {
    is_stable(&OperatorSpec::new(Family::Imr, g.arity(), r, f)?, g, cfg)
}
