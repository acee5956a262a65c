use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use splitlab_core::solver::{exists_split_bruteforce, SearchOptions, SearchResult, SplitOutcome};
use splitlab_core::SplitSpec;

use super::{read_digraph, run_search, Ctx};
use crate::{EXIT_BUDGET, EXIT_FAIL, EXIT_PASS};

#[derive(Args)]
pub struct SolveArgs {
    /// Threshold for part A.
    #[arg(long)]
    pub s: u32,

    /// Threshold for part B.
    #[arg(long)]
    pub t: u32,

    /// Digraph file to decide.
    #[arg(long)]
    pub input: PathBuf,

    /// Use the mask-enumeration oracle (n <= 20) instead of branch-and-bound.
    #[arg(long)]
    pub brute_force: bool,
}

pub(crate) fn emit_result(json_mode: bool, r: &SearchResult) -> u8 {
    let (outcome, a, b): (&str, Vec<u32>, Vec<u32>) = match &r.outcome {
        SplitOutcome::Found(w) => ("found", w.a().to_vec(), w.b().to_vec()),
        SplitOutcome::Unsplittable => ("none", vec![], vec![]),
        SplitOutcome::BudgetExceeded => ("budget", vec![], vec![]),
    };
    let line = json!({
        "outcome": outcome,
        "A": a,
        "B": b,
        "nodes": r.nodes,
        "elapsed_ms": r.elapsed.as_millis() as u64,
    });
    if json_mode {
        println!("{line}");
    } else {
        match &r.outcome {
            SplitOutcome::Found(w) => println!(
                "found: A={:?} B={:?} (nodes={}, {} ms)",
                w.a().to_vec(),
                w.b().to_vec(),
                r.nodes,
                r.elapsed.as_millis()
            ),
            SplitOutcome::Unsplittable => {
                println!("none: no split exists (nodes={}, {} ms)", r.nodes, r.elapsed.as_millis())
            }
            SplitOutcome::BudgetExceeded => {
                println!("budget: exhausted after {} nodes", r.nodes)
            }
        }
    }
    match r.outcome {
        SplitOutcome::Found(_) => EXIT_PASS,
        SplitOutcome::Unsplittable => EXIT_FAIL,
        SplitOutcome::BudgetExceeded => EXIT_BUDGET,
    }
}

pub fn run(ctx: &Ctx, args: SolveArgs) -> anyhow::Result<u8> {
    let d = read_digraph(&args.input)?;
    let spec = SplitSpec::new(args.s, args.t)?;
    let result = if args.brute_force {
        exists_split_bruteforce(&d, spec)?
    } else {
        run_search(&d, spec, SearchOptions { budget: ctx.budget, prune: true })
    };
    Ok(emit_result(ctx.json, &result))
}
