//! `splitlab`: generators, expander verification, reduction gadgets, exact
//! splitting decisions, and reproducible experiment campaigns over them.
//!
//! Exit codes: 0 pass/found, 1 property-fail/no-split, 2 usage error,
//! 3 node budget exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod report;

pub(crate) const EXIT_PASS: u8 = 0;
pub(crate) const EXIT_FAIL: u8 = 1;
pub(crate) const EXIT_USAGE: u8 = 2;
pub(crate) const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "splitlab", version, about = "Laboratory for out-degree splitting of digraphs")]
struct Cli {
    /// Base seed for all randomized work.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit machine-readable JSON where the command supports both forms.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (0 = library default). Results never depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Node budget for the exact search.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a digraph from a named family.
    Gen(commands::gen::GenArgs),
    /// Sample and exhaustively verify bipartite k-out expanders.
    Expander(commands::expander::ExpanderArgs),
    /// Build a reduction gadget from a base digraph.
    Gadget(commands::gadget::GadgetArgs),
    /// Decide (s,t)-splittability of a digraph.
    Solve(commands::solve::SolveArgs),
    /// Sample many expanders and report the verification success rate.
    LemmaSweep(commands::lemma_sweep::LemmaSweepArgs),
    /// Fuzz (or exhaustively check) a gadget's lifting claim.
    ClaimFuzz(commands::claim_fuzz::ClaimFuzzArgs),
    /// Print the closed-form bound table for a hypothetical base value.
    Bounds(commands::bounds::BoundsArgs),
    /// Run the gadget -> solve -> project -> verify chain on one instance.
    Pipeline(commands::pipeline::PipelineArgs),
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Ignore failure: the global pool can only be set once (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let ctx = commands::Ctx {
        seed: splitlab_core::Seed(cli.seed),
        json: cli.json,
        budget: cli.budget,
    };
    let result = match cli.command {
        Command::Gen(args) => commands::gen::run(&ctx, args),
        Command::Expander(args) => commands::expander::run(&ctx, args),
        Command::Gadget(args) => commands::gadget::run(&ctx, args),
        Command::Solve(args) => commands::solve::run(&ctx, args),
        Command::LemmaSweep(args) => commands::lemma_sweep::run(&ctx, args),
        Command::ClaimFuzz(args) => commands::claim_fuzz::run(&ctx, args),
        Command::Bounds(args) => commands::bounds::run(&ctx, args),
        Command::Pipeline(args) => commands::pipeline::run(&ctx, args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
