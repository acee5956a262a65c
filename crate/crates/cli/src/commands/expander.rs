use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use serde_json::json;

use splitlab_core::expander::{
    check_property_ii, emit_bipartite, generate_verified, parse_bipartite, ExpanderError,
    ExpanderParams,
};

use super::Ctx;
use crate::{EXIT_FAIL, EXIT_PASS};

#[derive(Args)]
pub struct ExpanderArgs {
    /// Side size |S| = |T|.
    #[arg(long, required_unless_present = "check")]
    pub n: Option<u32>,

    /// S-side degree (k >= 3).
    #[arg(long, required_unless_present = "check")]
    pub k: Option<u32>,

    /// Retry limit for the sample-and-verify loop.
    #[arg(long, default_value_t = 20)]
    pub max_tries: u32,

    /// Write the verified graph here.
    #[arg(long, conflicts_with = "check")]
    pub emit: Option<PathBuf>,

    /// Read a graph file and verify it instead of sampling.
    #[arg(long)]
    pub check: Option<PathBuf>,
}

pub fn run(ctx: &Ctx, args: ExpanderArgs) -> anyhow::Result<u8> {
    if let Some(path) = &args.check {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let g = parse_bipartite(&text).with_context(|| format!("parsing {}", path.display()))?;
        let params = ExpanderParams::certified(g.n(), g.k())?;
        let verdict = check_property_ii(&g, &params)?;
        let report = json!({
            "record": "expander-check",
            "n": g.n(),
            "k": g.k(),
            "x_cap": params.x_cap(),
            "holds": verdict.holds,
            "witness_x": verdict.witness.as_ref().map(|w| w.x.to_vec()),
            "witness_y": verdict.witness.as_ref().map(|w| w.y.to_vec()),
        });
        if ctx.json {
            println!("{report}");
        } else if verdict.holds {
            println!("verified: property holds at x_cap = {}", params.x_cap());
        } else {
            let w = verdict.witness.unwrap();
            println!(
                "violated: X = {:?}, Y = {:?}",
                w.x.to_vec(),
                w.y.to_vec()
            );
        }
        return Ok(if verdict.holds { EXIT_PASS } else { EXIT_FAIL });
    }

    let (n, k) = (args.n.expect("clap enforces"), args.k.expect("clap enforces"));
    match generate_verified(n, k, ctx.seed, args.max_tries) {
        Ok(verified) => {
            let report = json!({
                "record": "expander",
                "n": n,
                "k": k,
                "x_cap": verified.params().x_cap(),
                "tries": verified.tries(),
                "seed_used": verified.seed().0,
            });
            if ctx.json {
                println!("{report}");
            } else {
                println!(
                    "verified k-out graph: n={n} k={k} x_cap={} tries={}",
                    verified.params().x_cap(),
                    verified.tries()
                );
            }
            if let Some(path) = &args.emit {
                std::fs::write(path, emit_bipartite(verified.graph()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(EXIT_PASS)
        }
        Err(ExpanderError::VerificationExhausted { tries, last_x, last_y }) => {
            let report = json!({
                "record": "expander",
                "n": n,
                "k": k,
                "tries": tries,
                "exhausted": true,
                "last_witness_x": last_x,
                "last_witness_y": last_y,
            });
            if ctx.json {
                println!("{report}");
            } else {
                eprintln!("no verified graph within {tries} tries; last witness X={last_x:?} Y={last_y:?}");
            }
            Ok(EXIT_FAIL)
        }
        Err(other) => Err(other.into()),
    }
}
