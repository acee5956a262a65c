use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::Args;
use serde_json::json;

use splitlab_core::expander::{generate_verified, sample_k_out};
use splitlab_core::gadgets::{
    audit, layer_size, project, split_neighborhood_gadget, tower_gadget, GadgetAParams, OriginMap,
    TowerParams,
};
use splitlab_core::solver::{verify_partition, SearchOptions, SplitOutcome, SplitWitness};
use splitlab_core::SplitSpec;

use super::{read_digraph, run_search, Ctx, KindArg, ModeArg};
use crate::report::{meta_line, print_line};
use crate::{EXIT_BUDGET, EXIT_FAIL, EXIT_PASS};

/// Default node budget when the caller passes none. Scaled down for big
/// gadgets, where each search node costs two core peels: the run then ends
/// in an honest "budget" outcome within seconds instead of grinding.
fn default_budget(gadget: &splitlab_core::Digraph) -> u64 {
    let work = gadget.n() as u64 + gadget.arc_count();
    if work > 100_000 {
        2_000
    } else {
        200_000
    }
}

#[derive(Args)]
pub struct PipelineArgs {
    /// Base digraph file.
    #[arg(long)]
    pub base: PathBuf,

    /// Which gadget to drive.
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Split gadget parameter f.
    #[arg(long)]
    pub f: Option<u32>,

    /// Tower target threshold s.
    #[arg(long)]
    pub s: Option<u32>,

    /// Tower expander degree k.
    #[arg(long)]
    pub k: Option<u32>,

    /// Override the certified layer size (marks the gadget uncertified).
    #[arg(long)]
    pub layer_size: Option<u64>,

    /// Threshold labeling for the solve step: both-sided or one-sided.
    #[arg(long, value_enum, default_value_t = ModeArg::One)]
    pub mode: ModeArg,

    /// Retry limit for expander verification.
    #[arg(long, default_value_t = 20)]
    pub max_tries: u32,
}

pub fn run(ctx: &Ctx, args: PipelineArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let base = read_digraph(&args.base)?;
    let both = args.mode == ModeArg::Both;

    // Gadget construction plus the solve/verify thresholds it certifies.
    let (om, solve_spec, target_spec): (OriginMap, SplitSpec, SplitSpec) = match args.kind {
        KindArg::Split => {
            let f = args.f.context("split pipeline requires --f")?;
            let om = split_neighborhood_gadget(&base, GadgetAParams::new(f)?)?;
            let solve = SplitSpec::new(2, if both { 2 } else { 1 })?;
            let target = SplitSpec::new(4, if both { 4 } else { 1 })?;
            (om, solve, target)
        }
        KindArg::Tower => {
            let s = args.s.context("tower pipeline requires --s")?;
            let k = args.k.context("tower pipeline requires --k")?;
            let params = match args.layer_size {
                Some(d) => {
                    let g = sample_k_out(u32::try_from(d)?, k, ctx.seed)?;
                    TowerParams::with_layer_size(s, d, g)?
                }
                None => {
                    let d = layer_size(k, s)?;
                    let verified = generate_verified(u32::try_from(d)?, k, ctx.seed, args.max_tries)?;
                    TowerParams::new(s, verified)?
                }
            };
            let om = tower_gadget(&base, &params)?;
            let solve = SplitSpec::new(3, if both { 3 } else { 1 })?;
            let target = SplitSpec::new(s, if both { s } else { 1 })?;
            (om, solve, target)
        }
    };

    print_line(&meta_line(
        ctx.seed.0,
        json!({
            "kind": match args.kind { KindArg::Split => "split", KindArg::Tower => "tower" },
            "mode": if both { "both" } else { "one" },
            "solve_s": solve_spec.s(),
            "solve_t": solve_spec.t(),
            "target_s": target_spec.s(),
            "target_t": target_spec.t(),
        }),
    ));

    let gadget_audit = audit(&om);
    print_line(&json!({
        "record": "gadget",
        "vertices": gadget_audit.vertices,
        "arcs": gadget_audit.arcs,
        "min_out_degree": gadget_audit.min_out_degree,
        "audit_pass": gadget_audit.pass(),
        "certified": om.is_certified(),
    }));

    let budget = ctx.budget.unwrap_or_else(|| default_budget(om.gadget()));
    let result = run_search(
        om.gadget(),
        solve_spec,
        SearchOptions { budget: Some(budget), prune: true },
    );
    print_line(&json!({
        "record": "solve",
        "outcome": match &result.outcome {
            SplitOutcome::Found(_) => "found",
            SplitOutcome::Unsplittable => "none",
            SplitOutcome::BudgetExceeded => "budget",
        },
        "nodes": result.nodes,
        "budget": budget,
        "elapsed_ms": result.elapsed.as_millis() as u64,
    }));

    let (verdict, code) = match &result.outcome {
        SplitOutcome::Found(w) => {
            let a = project(&om, w.a());
            let b = project(&om, w.b());
            let projected = SplitWitness::new(a.clone(), b.clone(), target_spec);
            let verified = verify_partition(om.base(), &projected);
            print_line(&json!({
                "record": "project",
                "a_size": a.len(),
                "b_size": b.len(),
                "a": a.to_vec(),
                "b": b.to_vec(),
                "target_s": target_spec.s(),
                "target_t": target_spec.t(),
                "verified": verified,
            }));
            if verified {
                ("found-verified", EXIT_PASS)
            } else {
                ("found-unverified", EXIT_FAIL)
            }
        }
        SplitOutcome::Unsplittable => ("none", EXIT_FAIL),
        SplitOutcome::BudgetExceeded => ("budget", EXIT_BUDGET),
    };
    print_line(&json!({
        "record": "summary",
        "verdict": verdict,
        "gadget_audit_pass": gadget_audit.pass(),
        "elapsed_ms": start.elapsed().as_millis() as u64,
    }));
    Ok(code)
}
