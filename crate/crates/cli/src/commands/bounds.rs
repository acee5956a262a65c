use clap::Args;
use serde_json::json;

use splitlab_core::expander::epsilon;
use splitlab_core::gadgets::{chain_bound, f_bound, layer_size, slack_holds, BoundMode};

use super::{Ctx, ModeArg};
use crate::EXIT_PASS;

#[derive(Args)]
pub struct BoundsArgs {
    /// Hypothetical value of the two-threshold bound.
    #[arg(long)]
    pub f2b2: u32,

    /// Target threshold s.
    #[arg(long)]
    pub s: u32,

    /// Target threshold t (must be 1 in one-sided mode).
    #[arg(long)]
    pub t: u32,

    /// Bound labeling: both-sided (b(x) = x) or one-sided (b(x) = 1).
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,

    /// Override the three-threshold value (defaults to f2b2²).
    #[arg(long)]
    pub k: Option<u32>,
}

pub fn run(ctx: &Ctx, args: BoundsArgs) -> anyhow::Result<u8> {
    let chain = chain_bound(args.f2b2);
    let k = args.k.unwrap_or(u32::try_from(chain).unwrap_or(u32::MAX));
    let mode = match args.mode {
        ModeArg::Both => BoundMode::BothSides,
        ModeArg::One => BoundMode::OneSide,
    };
    let fb = f_bound(args.f2b2, args.s, args.t, mode)?;

    let mut note = None;
    let (eps_val, d_val, slack_ok) = if k < 3 {
        note = Some("expansion verification requires k >= 3; no layer size for this k");
        (None, None, None)
    } else {
        let eps = epsilon(k)?;
        if args.s < 4 {
            note = Some("tower gadget requires s >= 4; no layer size for this s");
            (Some(eps.approx()), None, None)
        } else {
            let d = layer_size(k, args.s)?;
            (Some(eps.approx()), Some(d), Some(slack_holds(args.s, k, d)))
        }
    };

    if ctx.json {
        println!(
            "{}",
            json!({
                "record": "bounds",
                "f2b2": args.f2b2,
                "s": args.s,
                "t": args.t,
                "mode": match args.mode { ModeArg::Both => "both", ModeArg::One => "one" },
                "chain_bound": chain,
                "k": k,
                "epsilon": eps_val,
                "layer_size": d_val,
                "f_bound": fb.approx(),
                "slack_ok": slack_ok,
                "note": note,
            })
        );
    } else {
        println!("chain bound f2b2^2 (>= three-threshold value): {chain}");
        match eps_val {
            Some(e) => println!("epsilon(k={k}): {e:.9}"),
            None => println!("epsilon(k={k}): -"),
        }
        match d_val {
            Some(d) => println!("layer size d(k={k}, s={}): {d}", args.s),
            None => println!("layer size d: -"),
        }
        println!("f_bound (e^2/3)*f2b2^6*max(s,t): {:.4}", fb.approx());
        match slack_ok {
            Some(true) => println!("slack s-1 < eps*d: ok"),
            Some(false) => println!("slack s-1 < eps*d: FAILED"),
            None => println!("slack s-1 < eps*d: -"),
        }
        if let Some(n) = note {
            println!("note: {n}");
        }
    }
    Ok(EXIT_PASS)
}
