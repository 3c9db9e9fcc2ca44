use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn wllab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wllab"))
        .args(args)
        .env_remove("WLLAB_CAP_TUPLES")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn manifest(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("manifests").join(name).display().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn graph(&self, name: &str, family: &str, params: &[&str]) -> PathBuf {
        let out = self.path(&format!("{name}.ccg.json"));
        let mut args = vec!["gen", "named", family];
        args.extend_from_slice(params);
        args.extend_from_slice(&["--out", path_str(&out)]);
        assert_eq!(code(&wllab(&args)), 0);
        out
    }

    fn refine(&self, input: &Path, out_name: &str, extra: &[&str]) -> (i32, PathBuf) {
        let out = self.path(out_name);
        let mut args = vec!["refine"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--out", path_str(&out), path_str(input)]);
        (code(&wllab(&args)), out)
    }
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn refine_path_reports_five_classes() {
    let ws = Workspace::new();
    let p3 = ws.graph("path3", "path", &["3"]);
    let (status, out) = ws.refine(&p3, "wl2.json", &["--family", "wl", "--k", "2"]);
    assert_eq!(status, 0);
    let doc = read_json(&out);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 5);
    assert_eq!(doc["n"], 3);
    assert_eq!(doc["arity"], 2);
    assert_eq!(doc["class_sizes"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum::<u64>(), 9);
    assert!(doc["iterations"].as_u64().is_some());
}

#[test]
fn refine_im_smoke() {
    let ws = Workspace::new();
    let k4 = ws.graph("k4", "complete", &["4"]);
    let (status, out) = ws.refine(&k4, "im3.json", &["--family", "im", "--k", "3", "--field", "q"]);
    assert_eq!(status, 0);
    assert_eq!(read_json(&out)["classes"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_one() {
    let ws = Workspace::new();
    let p3 = ws.graph("path3", "path", &["3"]);
    assert_eq!(ws.refine(&p3, "x.json", &["--k", "0"]).0, 1);
    assert_eq!(ws.refine(&p3, "x.json", &["--k", "2", "--field", "gf:4"]).0, 1);
    assert_eq!(ws.refine(&p3, "x.json", &["--k", "2", "--cap-tuples", "999999999999"]).0, 1);
    assert_eq!(code(&wllab(&["frobnicate"])), 1);
    assert_eq!(code(&wllab(&["--help"])), 0);
}

#[test]
fn parse_errors_exit_two_without_output() {
    let ws = Workspace::new();
    let bad = ws.path("bad.ccg.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (status, out) = ws.refine(&bad, "out.json", &["--k", "2"]);
    assert_eq!(status, 2);
    assert!(!out.exists());
    assert_eq!(ws.refine(&ws.path("missing.ccg.json"), "out.json", &["--k", "2"]).0, 2);
}

#[test]
fn caps_exit_three() {
    let ws = Workspace::new();
    let c5 = ws.graph("c5", "cycle", &["5"]);
    let (status, out) = ws.refine(&c5, "capped.json", &["--k", "3", "--cap-tuples", "100"]);
    assert_eq!(status, 3);
    assert!(!out.exists());

    let env_capped = Command::new(env!("CARGO_BIN_EXE_wllab"))
        .args(["refine", "--k", "3", path_str(&c5)])
        .env("WLLAB_CAP_TUPLES", "100")
        .output()
        .unwrap();
    assert_eq!(code(&env_capped), 3);
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_wllab"))
        .args(["refine", "--k", "3", "--cap-tuples", "1000", path_str(&c5)])
        .env("WLLAB_CAP_TUPLES", "100")
        .output()
        .unwrap();
    assert_eq!(code(&flag_wins), 0);

    let c7 = ws.graph("c7", "cycle", &["7"]);
    assert_eq!(ws.refine(&c7, "ep.json", &["--family", "ep", "--k", "2"]).0, 3);
    assert_eq!(ws.refine(&c7, "ep.json", &["--family", "ep", "--k", "2", "--allow-large"]).0, 0);
}

#[test]
fn compare_outcomes() {
    let ws = Workspace::new();
    let p3 = ws.graph("path3", "path", &["3"]);
    let (_, wl2) = ws.refine(&p3, "wl2.json", &["--family", "wl", "--k", "2"]);
    let (_, c3) = ws.refine(&p3, "c3.json", &["--family", "c", "--k", "3"]);
    let (_, atomic) = ws.refine(&p3, "atomic.json", &["--family", "wl", "--k", "1"]);
    let run = |a: &Path, b: &Path| {
        let out = wllab(&["compare", path_str(a), path_str(b)]);
        (code(&out), String::from_utf8(out.stdout).unwrap().trim().to_string())
    };
    assert_eq!(run(&wl2, &wl2), (0, "Equivalent".into()));
    assert_eq!(run(&wl2, &c3), (0, "Equivalent".into()));
    assert_eq!(run(&wl2, &atomic), (0, "FinerLeft".into()));
    assert_eq!(run(&atomic, &wl2), (0, "FinerRight".into()));

    let c5 = ws.graph("c5", "cycle", &["5"]);
    let (_, other) = ws.refine(&c5, "c5.json", &["--k", "2"]);
    assert_eq!(run(&wl2, &other).0, 2);
}

#[test]
fn outputs_are_deterministic() {
    let ws = Workspace::new();
    let g = ws.graph("petersen", "petersen", &[]);
    let (_, a) = ws.refine(&g, "a.json", &["--family", "c", "--k", "3"]);
    let (_, b) = ws.refine(&g, "b.json", &["--family", "c", "--k", "3"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());

    let r1 = ws.path("r1.ccg.json");
    let r2 = ws.path("r2.ccg.json");
    for r in [&r1, &r2] {
        let out = wllab(&["gen", "random", "--n", "5", "--colours", "4", "--seed", "7", "--out", path_str(r)]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(r1).unwrap(), std::fs::read(r2).unwrap());
}

#[test]
fn suites_pass_on_the_default_corpus() {
    let ws = Workspace::new();
    for name in ["wl_c_hierarchy.json", "ep_sandwich.json"] {
        let report = ws.path(&format!("{name}.report.json"));
        let out = wllab(&["suite", "--manifest", &manifest(name), "--out", path_str(&report)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        let doc = read_json(&report);
        assert_eq!(doc["schema"], "wllab-report/1");
        assert_eq!(doc["required_failures"], 0);
    }
}

#[test]
fn corrupted_expectation_fails_the_suite() {
    let ws = Workspace::new();
    let bad = ws.path("bad.json");
    let entries = r#"[
      {"command": {"kind": "dominance", "lower": "C", "lower_k": 3, "upper": "WL", "upper_k": 2, "max_n": 4}, "expect": "inconsistent"},
      {"command": {"kind": "distinguishes", "spas": "WL", "k": 1, "left": "cycle6", "right": "two_triangles"}, "expect": "true", "required": false}
    ]"#;
    std::fs::write(&bad, entries).unwrap();
    let report = ws.path("report.json");
    let out = wllab(&["suite", "--manifest", path_str(&bad), "--out", path_str(&report)]);
    assert_ne!(code(&out), 0);
    let doc = read_json(&report);
    assert_eq!(doc["required_failures"], 1);
    assert_eq!(doc["entries"][1]["passed"], false);
}

#[test]
fn suite_reads_a_corpus_directory() {
    let ws = Workspace::new();
    let dir = ws.path("corpus");
    assert_eq!(code(&wllab(&["gen", "corpus", "--out", path_str(&dir)])), 0);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 16);
    let m = ws.path("m.json");
    std::fs::write(
        &m,
        r#"[{"command": {"kind": "dominance", "lower": "C", "lower_k": 3, "upper": "WL", "upper_k": 2, "max_n": 6}, "expect": "equivalent"}]"#,
    )
    .unwrap();
    let report = ws.path("r.json");
    let out = wllab(&["suite", "--manifest", path_str(&m), "--corpus", path_str(&dir), "--out", path_str(&report)]);
    assert_eq!(code(&out), 0);
    let doc = read_json(&report);
    assert_eq!(doc["corpus"], "corpus");
    assert_eq!(doc["graphs"].as_array().unwrap().len(), 16);
}

#[test]
fn cfi_generation() {
    let ws = Workspace::new();
    let dir = ws.path("cfi");
    assert_eq!(code(&wllab(&["gen", "cfi", "cycle", "3", "--out", path_str(&dir)])), 0);
    let doc = read_json(&dir.join("cfi_cycle_3_twisted.ccg.json"));
    assert_eq!(doc["num_vertices"], 18);
    assert_eq!(doc["metadata"]["twisted_edges"].as_array().unwrap().len(), 1);
}
