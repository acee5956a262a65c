//! Line-delimited JSON experiment reports: a meta line first, per-trial
//! records in index order, and a summary object last. Everything except the
//! `elapsed_ms` fields is a pure function of the command line and seed, so
//! reports diff cleanly across runs.

use serde::Serialize;
use serde_json::{json, Value};

pub const FORMAT_VERSION: u32 = 1;

/// The invocation echo embedded in every report: the arguments as given.
pub fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

pub fn print_line<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report line serializes"));
}

pub fn meta_line(seed: u64, params: Value) -> Value {
    json!({
        "record": "meta",
        "format_version": FORMAT_VERSION,
        "command": command_echo(),
        "seed": seed,
        "params": params,
    })
}
