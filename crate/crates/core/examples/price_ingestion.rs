//! Price CSV to percent log-losses, then every measure on the sample.
//!
//! ```bash
//! cargo run --example price_ingestion
//! ```

use slidevar::cli::ingest::ingest_reader;
use slidevar::cli::{cmd_compute, OutputFormat, RunConfig};

const PRICES: &str = "\
date,price
2024-01-02,100.0
2024-01-03,101.2
2024-01-04,99.8
2024-01-05,97.1
2024-01-08,98.4
2024-01-09,95.0
2024-01-10,96.3
2024-01-11,99.0
2024-01-12,98.2
2024-01-16,94.9
2024-01-17,95.5
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let series = ingest_reader(PRICES.as_bytes())?;
    let dates = series.dates.as_deref().unwrap_or_default();
    for (d, l) in dates.iter().zip(&series.losses) {
        println!("{d}  loss {l:+.4}%");
    }

    // a short sample: coarse levels so several scenarios sit in the tail
    let config = RunConfig::from_toml(
        r#"
        [measure]
        alpha = 0.9
        beta = 0.8
        "#,
    )?;
    let table = cmd_compute(&config, &series)?;
    print!("{}", String::from_utf8(table.render(OutputFormat::Csv))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
