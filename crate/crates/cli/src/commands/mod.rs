use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;

use splitlab_core::digraph::parse_digraph;
use splitlab_core::solver::{exists_split_with, SearchOptions, SearchResult};
use splitlab_core::{Digraph, Seed, SplitSpec};

pub mod bounds;
pub mod claim_fuzz;
pub mod expander;
pub mod gadget;
pub mod gen;
pub mod lemma_sweep;
pub mod pipeline;
pub mod solve;

/// Global flags shared by every subcommand.
pub struct Ctx {
    pub seed: Seed,
    pub json: bool,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Split,
    Tower,
}

/// Threshold labeling for experiments: both-sided (`b(x) = x`) or one-sided
/// (`b(x) = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Both,
    One,
}

pub(crate) fn read_digraph(path: &Path) -> anyhow::Result<Digraph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_digraph(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Runs the exact search on its own big-stack thread: the recursion is
/// depth-bounded by the node budget, but large gadgets still want room.
pub(crate) fn run_search(d: &Digraph, spec: SplitSpec, opts: SearchOptions) -> SearchResult {
    let d = d.clone();
    std::thread::Builder::new()
        .name("split-search".into())
        .stack_size(256 << 20)
        .spawn(move || exists_split_with(&d, spec, opts))
        .expect("spawn search thread")
        .join()
        .expect("search thread panicked")
}
