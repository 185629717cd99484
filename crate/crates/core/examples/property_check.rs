//! Randomized property checks, the same ones the `check` subcommand runs.
//!
//! ```bash
//! cargo run --release --example property_check -- 500
//! ```

use std::time::Instant;

use slidevar::{run_all, CheckConfig};

pub fn run_example(cases: usize) -> Result<bool, Box<dyn std::error::Error>> {
    let cfg = CheckConfig { seed: 7, cases };
    let start = Instant::now();
    let outcomes = run_all(&cfg);
    let mut ok = true;
    for o in &outcomes {
        let status = if o.passed() { "ok" } else { "FAIL" };
        println!("{:<11} {:<4} {:>5} cases  {}", o.id, status, o.cases, o.name);
        if let Some(c) = &o.counterexample {
            println!("    counterexample: {c}");
        }
        ok &= o.passed();
    }
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(ok)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200);
    if !run_example(cases)? {
        std::process::exit(1);
    }
    Ok(())
}
