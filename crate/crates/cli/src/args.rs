use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wllab_core::field::FieldSpec;
use wllab_core::partition::DEFAULT_MAX_TUPLES;
use wllab_core::refine::EngineConfig;
use wllab_core::spas::SpasId;

use crate::failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "wllab", version, about = "Tuple refinement experiments on coloured graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the arc partition X_k(G) for one graph.
    Refine(RefineArgs),
    /// Compare two partition files.
    Compare(CompareArgs),
    /// Run a manifest of expectations over a corpus.
    Suite(SuiteArgs),
    /// Write generated graphs as .ccg.json documents.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Wl,
    C,
    Im,
    Imt,
    Imr,
    Ep,
}

/// Engine limits shared by the commands that refine.
#[derive(Debug, Args)]
pub struct Limits {
    /// Maximum number of tuples per partition.
    #[arg(long, env = "WLLAB_CAP_TUPLES")]
    pub cap_tuples: Option<usize>,
    /// Largest exhaustive search in similarity tests.
    #[arg(long)]
    pub cap_sim: Option<u64>,
    /// Allow caps above the defaults and EP beyond k = 2, n = 6.
    #[arg(long)]
    pub allow_large: bool,
    /// Seed for randomized similarity witnesses.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Limits {
    pub fn engine(&self) -> Result<EngineConfig, Failure> {
        let mut cfg = EngineConfig::default();
        if let Some(cap) = self.cap_tuples {
            if cap > DEFAULT_MAX_TUPLES && !self.allow_large {
                return Err(Failure::Usage(format!(
                    "--cap-tuples {cap} exceeds the default {DEFAULT_MAX_TUPLES}; pass --allow-large"
                )));
            }
            cfg.max_tuples = cap;
        }
        if let Some(cap) = self.cap_sim {
            if cap > cfg.similarity.exhaustive_cap && !self.allow_large {
                return Err(Failure::Usage(format!(
                    "--cap-sim {cap} exceeds the default {}; pass --allow-large",
                    cfg.similarity.exhaustive_cap
                )));
            }
            cfg.similarity.exhaustive_cap = cap;
        }
        if let Some(seed) = self.seed {
            cfg.similarity.seed = seed;
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[arg(long, value_enum, default_value = "wl")]
    pub family: FamilyArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    /// `q` or `gf:p`.
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    #[command(flatten)]
    pub limits: Limits,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Input graph (.ccg.json).
    pub input: PathBuf,
}

impl RefineArgs {
    pub fn spas(&self) -> Result<SpasId, Failure> {
        let r = self.r as usize;
        let id = match self.family {
            FamilyArg::Wl => SpasId::wl_r(r),
            FamilyArg::C => SpasId::c_r(r),
            FamilyArg::Im => SpasId::im(self.field),
            FamilyArg::Imt => SpasId::imt(self.field),
            FamilyArg::Imr => SpasId::imr(r, self.field),
            FamilyArg::Ep => SpasId::ep(),
        };
        Ok(SpasId::new(id.family, id.r, id.field)?)
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub left: PathBuf,
    pub right: PathBuf,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// JSON list of commands with expectations.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Directory of .ccg.json graphs; the built-in corpus when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[command(flatten)]
    pub limits: Limits,
    /// Report file; only the table is printed when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub what: GenKind,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// A named family: path, cycle, complete, complete_bipartite, grid,
    /// petersen, shrikhande, rook44, all_n4.
    Named {
        name: String,
        params: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// A seeded random coloured digraph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        colours: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The untwisted and twisted CFI graphs over a named base.
    Cfi {
        base: String,
        params: Vec<usize>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// The built-in corpus, one file per graph.
    Corpus {
        #[arg(long)]
        out: PathBuf,
    },
}
