use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use serde_json::json;

use splitlab_core::digraph::{emit_digraph, max_out_degree};
use splitlab_core::generators::{
    complete_digraph, directed_cycle, paley_tournament, random_digraph_min_outdeg,
};

use super::Ctx;
use crate::EXIT_PASS;

#[derive(Args)]
pub struct GenArgs {
    /// Family: complete | cycle | paley | random.
    pub family: String,

    /// Vertex count (complete, cycle, random).
    #[arg(long)]
    pub n: Option<u32>,

    /// Prime p ≡ 3 (mod 4) (paley).
    #[arg(long)]
    pub p: Option<u32>,

    /// Exact out-degree per vertex (random).
    #[arg(long)]
    pub delta: Option<u32>,

    /// Write the graph here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(ctx: &Ctx, args: GenArgs) -> anyhow::Result<u8> {
    let need = |opt: Option<u32>, flag: &str| {
        opt.with_context(|| format!("family '{}' requires --{flag}", args.family))
    };
    let d = match args.family.as_str() {
        "complete" => complete_digraph(need(args.n, "n")?)?,
        "cycle" => directed_cycle(need(args.n, "n")?)?,
        "paley" => paley_tournament(need(args.p, "p")?)?,
        "random" => {
            random_digraph_min_outdeg(need(args.n, "n")?, need(args.delta, "delta")?, ctx.seed)?
        }
        other => bail!("unknown family '{other}' (expected complete|cycle|paley|random)"),
    };
    let text = emit_digraph(&d);
    let min_out = (0..d.n()).map(|v| d.out_degree(v)).min().unwrap_or(0);
    let stats = json!({
        "record": "gen",
        "family": args.family,
        "n": d.n(),
        "m": d.arc_count(),
        "min_out_degree": min_out,
        "max_out_degree": max_out_degree(&d),
    });
    let stats_text = if ctx.json {
        stats.to_string()
    } else {
        format!(
            "n={} m={} min_out_degree={} max_out_degree={}",
            d.n(),
            d.arc_count(),
            min_out,
            max_out_degree(&d)
        )
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("{stats_text}");
        }
        None => {
            // Graph on stdout; keep stats out of the data stream.
            print!("{text}");
            std::io::stdout().flush()?;
            eprintln!("{stats_text}");
        }
    }
    Ok(EXIT_PASS)
}
