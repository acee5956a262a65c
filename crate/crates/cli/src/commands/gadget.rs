use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use serde_json::json;

use splitlab_core::digraph::emit_digraph;
use splitlab_core::expander::{generate_verified, sample_k_out};
use splitlab_core::gadgets::{
    audit, emit_origin_map, layer_size, split_neighborhood_gadget, tower_gadget, GadgetAParams,
    OriginMap, TowerParams,
};

use super::{read_digraph, Ctx, KindArg};
use crate::{EXIT_FAIL, EXIT_PASS};

#[derive(Args)]
pub struct GadgetArgs {
    /// Which gadget to build.
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Split gadget: the hypothetical two-threshold value f (base needs δ+ >= f²).
    #[arg(long)]
    pub f: Option<u32>,

    /// Tower gadget: target threshold s >= 4.
    #[arg(long)]
    pub s: Option<u32>,

    /// Tower gadget: expander degree k >= 3 (base needs δ+ >= d).
    #[arg(long)]
    pub k: Option<u32>,

    /// Base digraph file.
    #[arg(long)]
    pub base: PathBuf,

    /// Override the certified layer size (marks the gadget uncertified).
    #[arg(long)]
    pub layer_size: Option<u64>,

    /// Retry limit for expander verification.
    #[arg(long, default_value_t = 20)]
    pub max_tries: u32,

    /// Write the gadget digraph here.
    #[arg(long)]
    pub emit_gadget: Option<PathBuf>,

    /// Write the origin map here.
    #[arg(long)]
    pub emit_origin: Option<PathBuf>,
}

pub(crate) fn build_gadget(ctx: &Ctx, args: &GadgetArgs) -> anyhow::Result<OriginMap> {
    let base = read_digraph(&args.base)?;
    match args.kind {
        KindArg::Split => {
            let f = args.f.context("split gadget requires --f")?;
            Ok(split_neighborhood_gadget(&base, GadgetAParams::new(f)?)?)
        }
        KindArg::Tower => {
            let s = args.s.context("tower gadget requires --s")?;
            let k = args.k.context("tower gadget requires --k")?;
            let params = match args.layer_size {
                Some(d) => {
                    let g = sample_k_out(u32::try_from(d).context("layer size fits u32")?, k, ctx.seed)?;
                    TowerParams::with_layer_size(s, d, g)?
                }
                None => {
                    let d = layer_size(k, s)?;
                    let verified = generate_verified(
                        u32::try_from(d).context("layer size fits u32")?,
                        k,
                        ctx.seed,
                        args.max_tries,
                    )?;
                    TowerParams::new(s, verified)?
                }
            };
            Ok(tower_gadget(&base, &params)?)
        }
    }
}

pub fn run(ctx: &Ctx, args: GadgetArgs) -> anyhow::Result<u8> {
    let om = build_gadget(ctx, &args)?;
    let report = audit(&om);
    let line = json!({
        "record": "gadget",
        "kind": match args.kind { KindArg::Split => "split", KindArg::Tower => "tower" },
        "base_n": om.base().n(),
        "vertices": report.vertices,
        "expected_vertices": report.expected_vertices,
        "arcs": report.arcs,
        "expected_arcs": report.expected_arcs,
        "min_out_degree": report.min_out_degree,
        "expected_min_out_degree": report.expected_min_out_degree,
        "degrees_exact": report.degrees_exact,
        "aux_acyclic": report.aux_acyclic,
        "certified": om.is_certified(),
        "audit_pass": report.pass(),
    });
    if ctx.json {
        println!("{line}");
    } else {
        println!(
            "{} gadget: |V|={} arcs={} min_out_degree={} certified={} audit={}",
            match args.kind { KindArg::Split => "split", KindArg::Tower => "tower" },
            report.vertices,
            report.arcs,
            report.min_out_degree,
            om.is_certified(),
            if report.pass() { "pass" } else { "FAIL" },
        );
    }
    if let Some(path) = &args.emit_gadget {
        std::fs::write(path, emit_digraph(om.gadget()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.emit_origin {
        std::fs::write(path, emit_origin_map(&om))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.pass() { EXIT_PASS } else { EXIT_FAIL })
}
