//! Recompute each bundled table to its quick cap and report the result.
//! Pass `full` to go to the end of every table the machine can reach.

use fplmap::cli::{cmd_verify, Scope};
use fplmap::transfer::EngineOptions;

fn main() {
    let scope = match std::env::args().nth(1).as_deref() {
        Some("full") => Scope::Full,
        _ => Scope::Fast,
    };
    let options = EngineOptions {
        max_states: Some(50_000_000),
        ..EngineOptions::all_cores()
    };
    let summary = cmd_verify(scope, &[], &[], options).expect("known tables");
    print!("{}", summary.render());
    if let Err(e) = summary.status() {
        eprintln!("{e}");
        std::process::exit(i32::from(e.exit_code()));
    }
}
