use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};
use wllab_core::generators::{cfi_pair, default_corpus, encode, named, random_coloured_digraph, GraphDoc, NamedGraph};
use wllab_core::spas::{spas_run, EpOptions};
use wllab_core::Graph;

use crate::args::{CompareArgs, GenArgs, GenKind, RefineArgs, SuiteArgs};
use crate::docs::{emit, read_graph, read_json, to_json, write_atomic, PartitionDoc};
use crate::failure::Failure;
use crate::manifest::{evaluate, Entry};

pub fn refine(a: RefineArgs) -> Result<(), Failure> {
    let cfg = a.limits.engine()?;
    let spas = a.spas()?;
    let (graph, doc) = read_graph(&a.input)?;
    let k = a.k as usize;
    let run = spas_run(&spas, &graph, k, &cfg, EpOptions { allow_large: a.limits.allow_large })?;
    let mut out = PartitionDoc::new(&run.partition, run.iterations);
    out.scheme = Some(spas.to_string());
    out.k = Some(k);
    out.input = Some(match doc.metadata.get("name").and_then(Value::as_str) {
        Some(name) => name.to_string(),
        None => a.input.display().to_string(),
    });
    emit(a.out.as_deref(), &to_json(&out))?;
    eprintln!("{spas}_{k}: {} classes after {} rounds", run.partition.class_count(), run.iterations);
    Ok(())
}

pub fn compare(a: CompareArgs) -> Result<(), Failure> {
    let left: PartitionDoc = read_json(&a.left)?;
    let right: PartitionDoc = read_json(&a.right)?;
    let (l, r) = (left.partition(&a.left)?, right.partition(&a.right)?);
    if l.n() != r.n() || l.arity() != r.arity() {
        return Err(Failure::input(
            &a.right,
            format!("shape (n={}, arity={}) differs from (n={}, arity={})", r.n(), r.arity(), l.n(), l.arity()),
        ));
    }
    println!("{}", l.compare(&r)?);
    Ok(())
}

fn load_corpus(dir: Option<&Path>) -> Result<(String, Vec<NamedGraph>), Failure> {
    let Some(dir) = dir else {
        return Ok(("default".into(), default_corpus()?));
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Failure::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".ccg.json"))
        .collect();
    paths.sort();
    let mut graphs = Vec::with_capacity(paths.len());
    for path in paths {
        let (graph, doc) = read_graph(&path)?;
        let stem = path.file_name().unwrap_or_default().to_string_lossy().trim_end_matches(".ccg.json").to_string();
        let name = doc.metadata.get("name").and_then(Value::as_str).map(str::to_string).unwrap_or(stem);
        graphs.push(NamedGraph::new(name, graph));
    }
    let id = dir.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| dir.display().to_string());
    Ok((id, graphs))
}

pub fn suite(a: SuiteArgs) -> Result<(), Failure> {
    let cfg = a.limits.engine()?;
    let entries: Vec<Entry> = read_json(&a.manifest)?;
    let (corpus_id, corpus) = load_corpus(a.corpus.as_deref())?;
    let mut results = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let result = evaluate(i, entry, &corpus_id, &corpus, &cfg)?;
        println!("{}", result.table_line());
        results.push(result);
    }
    let failed = results.iter().filter(|r| r.required && !r.passed).count();
    let manifest = a.manifest.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let report = json!({
        "schema": "wllab-report/1",
        "manifest": manifest,
        "corpus": corpus_id,
        "graphs": corpus.iter().map(|g| g.name.clone()).collect::<Vec<_>>(),
        "entries": results,
        "required_failures": failed,
    });
    if let Some(out) = &a.out {
        write_atomic(out, &to_json(&report))?;
    }
    if failed > 0 {
        return Err(Failure::Expectations(failed));
    }
    Ok(())
}

fn metadata(name: &str, family: &str, seed: Option<u64>) -> BTreeMap<String, Value> {
    let mut meta = BTreeMap::new();
    meta.insert("name".into(), Value::from(name));
    meta.insert("family".into(), Value::from(family));
    if let Some(seed) = seed {
        meta.insert("seed".into(), Value::from(seed));
    }
    meta
}

fn write_graph(path: &Path, graph: &Graph, meta: BTreeMap<String, Value>) -> Result<(), Failure> {
    let doc: GraphDoc = encode(graph, meta);
    write_atomic(path, &doc.to_json())
}

fn graph_name(name: &str, params: &[usize]) -> String {
    std::iter::once(name.to_string()).chain(params.iter().map(usize::to_string)).collect::<Vec<_>>().join("_")
}

pub fn gen(a: GenArgs) -> Result<(), Failure> {
    match a.what {
        GenKind::Named { name, params, out } => {
            let graph = named(&name, &params)?;
            write_graph(&out, &graph, metadata(&graph_name(&name, &params), &name, None))
        }
        GenKind::Random { n, colours, seed, out } => {
            let graph = random_coloured_digraph(n, colours, seed)?;
            write_graph(&out, &graph, metadata(&format!("random_{n}_{colours}_{seed}"), "random", Some(seed)))
        }
        GenKind::Cfi { base, params, out } => {
            let pair = cfi_pair(&named(&base, &params)?)?;
            std::fs::create_dir_all(&out).map_err(|e| Failure::io(&out, e))?;
            let stem = format!("cfi_{}", graph_name(&base, &params));
            for (suffix, g) in [("untwisted", &pair.untwisted), ("twisted", &pair.twisted)] {
                let name = format!("{stem}_{suffix}");
                let mut meta = metadata(&name, "cfi", None);
                meta.insert("twisted_edges".into(), json!(g.twisted));
                write_graph(&out.join(format!("{name}.ccg.json")), &g.graph, meta)?;
            }
            Ok(())
        }
        GenKind::Corpus { out } => {
            std::fs::create_dir_all(&out).map_err(|e| Failure::io(&out, e))?;
            for g in default_corpus()? {
                write_graph(&out.join(format!("{}.ccg.json", g.name)), &g.graph, metadata(&g.name, "corpus", None))?;
            }
            Ok(())
        }
    }
}
