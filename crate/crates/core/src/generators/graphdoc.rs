use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::partition::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GraphDefaults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r#loop: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonedge: Option<String>,
}

/// Serialized form of a [`Graph`] (`.ccg.json`).
///
/// Arcs whose colour equals the matching default are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub num_vertices: usize,
    pub colours: Vec<String>,
    pub arcs: Vec<(usize, usize, usize)>,
    #[serde(default)]
    pub defaults: GraphDefaults,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

fn most_frequent<'a>(names: impl Iterator<Item = &'a str>) -> Option<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for name in names {
        *counts.entry(name).or_default() += 1;
    }
    // Ties go to the smallest name.
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(a.0)))
        .map(|(name, _)| name.to_string())
}

/// Canonical document for `g`.
pub fn encode(g: &Graph, metadata: BTreeMap<String, Value>) -> GraphDoc {
    let n = g.n();
    let colours: Vec<String> = g.names().iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let index = |name: &str| colours.binary_search_by(|c| c.as_str().cmp(name)).expect("known colour");
    let defaults = GraphDefaults {
        r#loop: most_frequent((0..n).map(|v| g.colour_name(v, v))),
        nonedge: most_frequent(
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).map(|(u, v)| g.colour_name(u, v)),
        ),
    };
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let name = g.colour_name(u, v);
            let default = if u == v { &defaults.r#loop } else { &defaults.nonedge };
            if default.as_deref() != Some(name) {
                arcs.push((u, v, index(name)));
            }
        }
    }
    GraphDoc {
        num_vertices: n,
        colours,
        arcs,
        defaults,
        metadata,
    }
}

/// Rebuild the graph, checking indices, duplicates, defaults and the rainbow conditions.
pub fn decode(doc: &GraphDoc) -> Result<Graph> {
    let n = doc.num_vertices;
    let mut cells: Vec<Option<&str>> = vec![None; n * n];
    for &(u, v, c) in &doc.arcs {
        if u >= n || v >= n {
            return Err(Error::Parse(format!("arc ({u}, {v}) outside {n} vertices")));
        }
        let name = doc
            .colours
            .get(c)
            .ok_or_else(|| Error::Parse(format!("colour index {c} out of range")))?;
        if cells[u * n + v].replace(name).is_some() {
            return Err(Error::Parse(format!("arc ({u}, {v}) listed twice")));
        }
    }
    for d in [&doc.defaults.r#loop, &doc.defaults.nonedge].into_iter().flatten() {
        if !doc.colours.contains(d) {
            return Err(Error::Parse(format!("default colour {d:?} not in the colour list")));
        }
    }
    let mut names = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let name = match cells[u * n + v] {
                Some(name) => name,
                None => {
                    let default = if u == v { &doc.defaults.r#loop } else { &doc.defaults.nonedge };
                    default
                        .as_deref()
                        .ok_or_else(|| Error::Parse(format!("arc ({u}, {v}) missing and no default")))?
                }
            };
            names.push(name.to_string());
        }
    }
    Graph::from_fn(n, |u, v| names[u * n + v].clone())
}

impl GraphDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, petersen, random_coloured_digraph};
    use crate::Comparison;
    use proptest::prelude::*;

    #[test]
    fn plain_graph_uses_defaults() {
        let doc = encode(&cycle(5).unwrap(), BTreeMap::new());
        assert_eq!(doc.colours, vec!["edge", "loop", "nonedge"]);
        assert_eq!(doc.defaults.r#loop.as_deref(), Some("loop"));
        // 10 edge arcs and 10 nonedge arcs; the tie goes to the smaller name.
        assert_eq!(doc.defaults.nonedge.as_deref(), Some("edge"));
        assert_eq!(doc.arcs.len(), 10);
        let again = encode(&decode(&doc).unwrap(), BTreeMap::new());
        assert_eq!(doc, again);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let mut meta = BTreeMap::new();
        meta.insert("name".to_string(), Value::from("petersen"));
        let doc = encode(&petersen().unwrap(), meta);
        let text = doc.to_json();
        let back = GraphDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_documents() {
        let mut doc = encode(&cycle(4).unwrap(), BTreeMap::new());
        doc.arcs.push(doc.arcs[0]);
        assert!(matches!(decode(&doc), Err(Error::Parse(_))));
        let mut doc = encode(&cycle(4).unwrap(), BTreeMap::new());
        doc.defaults.nonedge = None;
        assert!(decode(&doc).is_err());
        assert!(GraphDoc::from_json("{").is_err());
        let asym = GraphDoc {
            num_vertices: 2,
            colours: vec!["a".into(), "b".into(), "l".into()],
            arcs: vec![(0, 1, 0), (1, 0, 1)],
            defaults: GraphDefaults { r#loop: Some("l".into()), nonedge: None },
            metadata: BTreeMap::new(),
        };
        // Distinct colours both ways is a valid rainbow; same colour one way only is not.
        assert!(decode(&asym).is_ok());
        let bad = GraphDoc { arcs: vec![(0, 1, 0), (1, 0, 2)], ..asym };
        assert!(matches!(decode(&bad), Err(Error::NotRainbow(_))));
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(n in 1usize..7, c in 2usize..5, seed in any::<u64>()) {
            let g = random_coloured_digraph(n, c, seed).unwrap();
            let back = decode(&encode(&g, BTreeMap::new())).unwrap();
            prop_assert_eq!(back.partition().compare(g.partition()).unwrap(), Comparison::Equivalent);
            prop_assert_eq!(back.names(), g.names());
        }
    }
}
