use super::is_wl_stable;
use crate::error::{Error, Result};
use crate::partition::{is_graph_like, LabelledPartition, TupleSpace};

/// `γ̂(v, w) = (γ(v), γ(v<1,w>), ..., γ(v<k,w>))` on `V^{k+1}`.
///
/// With `verify` set the input must also be `WL_k`-stable.
pub fn hat_extension(g: &LabelledPartition, verify: bool) -> Result<LabelledPartition> {
    let report = is_graph_like(g);
    if !report.holds {
        return Err(Error::NotGraphLike(report.violation.unwrap_or_default()));
    }
    if verify && !is_wl_stable(g, 1)? {
        return Err(Error::InvalidParameter("input is not WL_k-stable".into()));
    }
    let k = g.arity();
    let n = g.n();
    let small = g.space();
    let big = TupleSpace::new(n, k + 1)?;
    let labels: Vec<Vec<u32>> = (0..big.size())
        .map(|idx| {
            let v = idx / n;
            let w = idx % n;
            let mut label = Vec::with_capacity(k + 1);
            label.push(g.colour_at(v));
            label.extend((0..k).map(|p| g.colour_at(small.replace(v, p, w))));
            label
        })
        .collect();
    LabelledPartition::from_labels(n, k + 1, labels)
}
