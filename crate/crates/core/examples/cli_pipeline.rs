//! Drives the `simulate` and `backtest` subcommands from a TOML config and
//! writes their tables to a temporary directory.
//!
//! ```bash
//! cargo run --release --example cli_pipeline
//! ```

use slidevar::cli::{cmd_backtest, cmd_simulate, emit, BacktestInput, OutputFormat, RunConfig};

const CONFIG: &str = r#"
[measure]
alpha = 0.99
beta = 0.95

[aversion]
family = "exponential"
gamma = 0.2

[sweep]
parameters = ["sigma1"]
samples = 20000
histogram_bins = 40

[synthetic]
length = 1500
switches = 2
"#;

pub fn run_example(out: &std::path::Path) -> Result<Vec<std::path::PathBuf>, Box<dyn std::error::Error>> {
    let config = RunConfig::from_toml(CONFIG)?;
    let mut tables = cmd_simulate(&config, 42)?;
    tables.extend(cmd_backtest(&config, BacktestInput::Synthetic { seed: 42 })?);
    let files = emit(&tables, out, OutputFormat::Csv)?;
    for (t, f) in tables.iter().zip(&files) {
        println!("{:<18} {:>6} rows -> {}", t.name, t.rows.len(), f.display());
    }
    Ok(files)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("slidevar-cli-pipeline");
    run_example(&dir)?;
    Ok(())
}
