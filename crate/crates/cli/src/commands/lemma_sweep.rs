use std::time::Instant;

use clap::Args;
use serde_json::json;

use splitlab_core::expander::run_lemma_sweep;

use super::Ctx;
use crate::report::{meta_line, print_line};
use crate::{EXIT_FAIL, EXIT_PASS};

#[derive(Args)]
pub struct LemmaSweepArgs {
    /// Side size |S| = |T|.
    #[arg(long)]
    pub n: u32,

    /// S-side degree (k >= 3).
    #[arg(long)]
    pub k: u32,

    /// Number of sampled graphs.
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
}

pub fn run(ctx: &Ctx, args: LemmaSweepArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let sweep = run_lemma_sweep(args.n, args.k, args.trials, ctx.seed)?;
    print_line(&meta_line(
        ctx.seed.0,
        json!({ "n": args.n, "k": args.k, "trials": args.trials, "x_cap": sweep.x_cap }),
    ));
    for trial in &sweep.trials {
        print_line(&json!({
            "record": "trial",
            "index": trial.index,
            "seed": trial.seed.0,
            "holds": trial.holds,
        }));
    }
    let pass = sweep.pass();
    print_line(&json!({
        "record": "summary",
        "trials": sweep.trials.len(),
        "successes": sweep.successes,
        "failures": sweep.trials.len() as u64 - sweep.successes,
        "failure_rate": sweep.failure_rate(),
        "union_bound": sweep.union_bound.approx(),
        "union_bound_below_one": sweep.union_bound.is_below_one(),
        "union_bound_cap": sweep.union_bound.cap,
        "verdict": if pass { "pass" } else { "fail" },
        "elapsed_ms": start.elapsed().as_millis() as u64,
    }));
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
