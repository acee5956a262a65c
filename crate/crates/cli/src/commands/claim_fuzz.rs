use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde_json::json;

use splitlab_core::expander::{generate_verified, sample_k_out};
use splitlab_core::gadgets::{
    exhaustive_lift_check, layer_size, run_lift_fuzz, split_neighborhood_gadget, tower_gadget,
    GadgetAParams, TowerParams,
};

use super::{read_digraph, Ctx};
use crate::report::{meta_line, print_line};
use crate::{EXIT_FAIL, EXIT_PASS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimKind {
    /// Split-gadget claim: level 2 in the gadget lifts to 4 in the base.
    A,
    /// Tower-gadget claim: level 3 in the gadget lifts to s in the base.
    B,
}

#[derive(Args)]
pub struct ClaimFuzzArgs {
    /// Which lifting claim to exercise.
    #[arg(long, value_enum)]
    pub kind: ClaimKind,

    /// Base digraph file.
    #[arg(long)]
    pub base: PathBuf,

    /// Split gadget parameter f (kind a).
    #[arg(long)]
    pub f: Option<u32>,

    /// Tower target threshold s (kind b).
    #[arg(long)]
    pub s: Option<u32>,

    /// Tower expander degree k (kind b).
    #[arg(long)]
    pub k: Option<u32>,

    /// Hypothesis level (defaults: 2 for kind a, 3 for kind b).
    #[arg(long)]
    pub level: Option<u32>,

    /// Number of random core-closure trials.
    #[arg(long, default_value_t = 200)]
    pub trials: u64,

    /// Check every subset of the gadget instead of fuzzing (small gadgets).
    #[arg(long)]
    pub exhaustive: bool,

    /// Override the certified layer size (marks the gadget uncertified).
    #[arg(long)]
    pub layer_size: Option<u64>,

    /// Retry limit for expander verification.
    #[arg(long, default_value_t = 20)]
    pub max_tries: u32,
}

pub fn run(ctx: &Ctx, args: ClaimFuzzArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let base = read_digraph(&args.base)?;
    let (om, level, params_echo) = match args.kind {
        ClaimKind::A => {
            let f = args.f.context("claim a requires --f")?;
            let om = split_neighborhood_gadget(&base, GadgetAParams::new(f)?)?;
            (om, args.level.unwrap_or(2), json!({ "kind": "a", "f": f }))
        }
        ClaimKind::B => {
            let s = args.s.context("claim b requires --s")?;
            let k = args.k.context("claim b requires --k")?;
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
            let d = params.d();
            let om = tower_gadget(&base, &params)?;
            (om, args.level.unwrap_or(3), json!({ "kind": "b", "s": s, "k": k, "d": d }))
        }
    };
    print_line(&meta_line(
        ctx.seed.0,
        json!({
            "gadget": params_echo,
            "base_n": om.base().n(),
            "gadget_n": om.gadget().n(),
            "level": level,
            "trials": if args.exhaustive { 0 } else { args.trials },
            "exhaustive": args.exhaustive,
            "certified": om.is_certified(),
        }),
    ));
    if args.exhaustive {
        let ex = exhaustive_lift_check(&om)?;
        let pass = ex.pass();
        print_line(&json!({
            "record": "summary",
            "subsets": ex.subsets,
            "level1_checked": ex.level1_checked,
            "level1_violations": ex.level1_violations,
            "high_checked": ex.high_checked,
            "high_violations": ex.high_violations,
            "verdict": if pass { "pass" } else { "fail" },
            "elapsed_ms": start.elapsed().as_millis() as u64,
        }));
        return Ok(if pass { EXIT_PASS } else { EXIT_FAIL });
    }
    let fuzz = run_lift_fuzz(&om, level, args.trials, ctx.seed)?;
    for trial in &fuzz.trials {
        print_line(&json!({
            "record": "trial",
            "index": trial.index,
            "w0": trial.w0_len,
            "core": trial.core_len,
            "skipped": trial.skipped,
            "holds": trial.holds,
        }));
    }
    let pass = fuzz.pass();
    print_line(&json!({
        "record": "summary",
        "trials": fuzz.trials.len(),
        "checked": fuzz.checked,
        "skipped": fuzz.skipped,
        "skip_rate": fuzz.skip_rate(),
        "violations": fuzz.violations,
        "certified": om.is_certified(),
        "verdict": if pass { "pass" } else { "fail" },
        "elapsed_ms": start.elapsed().as_millis() as u64,
    }));
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
