use std::collections::HashMap;

use super::CoherentConfiguration;
use crate::error::{Error, Result};
use crate::field::matrix_internals::EchelonBasis;
use crate::field::{Field, Matrix};

/// The 0-1 basis of a coherent algebra satisfying the coherence conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardBasis<F: Field> {
    pub matrices: Vec<Matrix<F>>,
}

/// Recovers the standard basis of the algebra spanned by `mats`.
///
/// Arcs are grouped by their entry vectors across `mats`; the indicator
/// matrices are returned in order of first arc. Fails with
/// [`Error::ClosureViolation`] unless the indicators form a basis of the span
/// that satisfies the coherence conditions and is closed under products.
pub fn standard_basis<F: Field>(mats: &[Matrix<F>]) -> Result<StandardBasis<F>> {
    let first = mats
        .first()
        .ok_or_else(|| Error::ClosureViolation("empty spanning set".into()))?;
    let n = first.rows();
    let f = first.field().clone();
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("spanning matrices differ in shape".into()));
    }

    let mut class_of: HashMap<Vec<&F::Elem>, usize> = HashMap::new();
    let mut arc_class = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let key: Vec<&F::Elem> = mats.iter().map(|m| m.get(u, v)).collect();
            let next = class_of.len();
            arc_class.push(*class_of.entry(key).or_insert(next));
        }
    }
    let count = class_of.len();
    let indicators: Vec<Matrix<F>> = (0..count)
        .map(|c| Matrix::indicator(&f, n, n, |u, v| arc_class[u * n + v] == c))
        .collect();

    let mut span = EchelonBasis::new(&f, n * n);
    for m in mats {
        span.insert(m.entries().to_vec());
    }
    if span.rank() != count {
        return Err(Error::ClosureViolation(format!(
            "{count} entry classes but the span has dimension {}",
            span.rank()
        )));
    }
    if let Some(c) = indicators.iter().position(|e| !span.contains(e.entries().to_vec())) {
        return Err(Error::ClosureViolation(format!("indicator of class {c} is not in the span")));
    }
    for (c, e) in indicators.iter().enumerate() {
        let diag = (0..n).filter(|&v| arc_class[v * n + v] == c).count();
        let total = arc_class.iter().filter(|&&a| a == c).count();
        if diag != 0 && diag != total {
            return Err(Error::ClosureViolation(format!(
                "class {c} mixes diagonal and off-diagonal entries, so no subset sums to I"
            )));
        }
        if !indicators.contains(&e.transpose()) {
            return Err(Error::ClosureViolation(format!("transpose of class {c} is not a basis element")));
        }
    }
    for (a, ea) in indicators.iter().enumerate() {
        for (b, eb) in indicators.iter().enumerate() {
            let prod = ea.mul(eb)?;
            if !span.contains(prod.into_entries()) {
                return Err(Error::ClosureViolation(format!(
                    "product of classes {a} and {b} leaves the span"
                )));
            }
        }
    }
    Ok(StandardBasis { matrices: indicators })
}

/// `A_σ A_τ = Σ_κ p_{στ}^κ A_κ` for all colour pairs, computed over `f`.
pub fn adjacency_law_holds<F: Field>(c: &CoherentConfiguration, f: &F) -> bool {
    let mats = c.adjacency_matrices(f);
    let n = c.n();
    let r = c.rank() as u32;
    for s in 0..r {
        for t in 0..r {
            let lhs = mats[s as usize].mul(&mats[t as usize]).expect("square");
            let terms: Vec<(F::Elem, &Matrix<F>)> = (0..r)
                .map(|k| (f.from_i64(c.p(s, t, k) as i64), &mats[k as usize]))
                .collect();
            if lhs != Matrix::linear_combination(f, n, n, &terms) {
                return false;
            }
        }
    }
    true
}
