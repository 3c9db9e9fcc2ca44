use crate::error::Result;
use crate::partition::Graph;

/// Vertex set `G ⊎ H`: intra arcs keep their colour names, cross arcs in both
/// directions get one fresh colour.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    disjoint_union_with(g, h).map(|(u, _)| u)
}

/// Like [`disjoint_union`], also returning the name of the cross colour.
pub fn disjoint_union_with(g: &Graph, h: &Graph) -> Result<(Graph, String)> {
    let mut cross = String::from("cross");
    while g.names().contains(&cross) || h.names().contains(&cross) {
        cross.push('\'');
    }
    let (a, b) = (g.n(), h.n());
    let union = Graph::from_fn(a + b, |u, v| match (u < a, v < a) {
        (true, true) => g.colour_name(u, v).to_string(),
        (false, false) => h.colour_name(u - a, v - a).to_string(),
        _ => cross.clone(),
    })?;
    Ok((union, cross))
}
