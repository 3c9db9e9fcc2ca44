use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wllab_core::generators::{decode, GraphDoc};
use wllab_core::{Graph, LabelledPartition};

use crate::failure::Failure;

/// Arc partition as written by `refine`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub n: usize,
    pub arity: usize,
    /// Arcs `u * n + v` per class, classes in canonical colour order.
    pub classes: Vec<Vec<usize>>,
    #[serde(default)]
    pub class_sizes: Vec<usize>,
    #[serde(default)]
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
}

impl PartitionDoc {
    pub fn new(p: &LabelledPartition, iterations: usize) -> Self {
        let classes = p.classes();
        PartitionDoc {
            n: p.n(),
            arity: p.arity(),
            class_sizes: classes.iter().map(Vec::len).collect(),
            classes,
            iterations,
            scheme: None,
            k: None,
            input: None,
        }
    }

    /// Rebuild the partition, checking that the classes cover every tuple once.
    pub fn partition(&self, path: &Path) -> Result<LabelledPartition, Failure> {
        let total = self
            .n
            .checked_pow(self.arity as u32)
            .ok_or_else(|| Failure::input(path, "partition too large"))?;
        let mut colours = vec![u32::MAX; total];
        for (c, class) in self.classes.iter().enumerate() {
            for &t in class {
                let slot = colours
                    .get_mut(t)
                    .ok_or_else(|| Failure::input(path, format!("tuple index {t} out of range")))?;
                if *slot != u32::MAX {
                    return Err(Failure::input(path, format!("tuple index {t} listed twice")));
                }
                *slot = c as u32;
            }
        }
        if colours.contains(&u32::MAX) {
            return Err(Failure::input(path, "classes do not cover every tuple"));
        }
        LabelledPartition::new(self.n, self.arity, colours).map_err(|e| Failure::input(path, e))
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::input(path, e))
}

pub fn read_graph(path: &Path) -> Result<(Graph, GraphDoc), Failure> {
    let doc = GraphDoc::from_json(&read_text(path)?).map_err(|e| Failure::input(path, e))?;
    let graph = decode(&doc).map_err(|e| Failure::input(path, e))?;
    Ok((graph, doc))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Write through a temporary file in the target directory and rename it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Failure::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}

/// Write to `out` if given, else print.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
