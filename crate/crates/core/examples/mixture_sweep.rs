//! The Gaussian-mixture sweeps: SlideVaR slides from VaR toward CVaR as
//! the first component widens or shifts right.
//!
//! ```bash
//! cargo run --release --example mixture_sweep
//! ```

use slidevar::{run_sweep, GlueVaRWeights, SlideVaRSpec, SweepSpec};

pub fn run_example(samples: usize) -> Result<(), Box<dyn std::error::Error>> {
    let cfg = toml::from_str::<SlideVaRSpec>(
        r#"
        alpha = 0.99
        beta = 0.95
        aversion = { family = "exponential", gamma = 0.2 }
        normalization = { family = "piecewise-linear", a = 20.0, b = 40.0 }
        "#,
    )?
    .build()?;

    for spec in [
        SweepSpec::sigma1_grid(samples, 2019),
        SweepSpec::mu1_grid(samples, 2019),
    ] {
        let table = run_sweep(&spec, &cfg, &GlueVaRWeights::equal())?;
        println!("sweep over {}", table.parameter.name());
        println!(
            "{:>6} {:>9} {:>9} {:>9} {:>9} {:>7}",
            "value", "VaR_b", "GlueVaR", "SlideVaR", "CVaR_a", "S(U)"
        );
        for r in &table.rows {
            println!(
                "{:>6} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>7.3}",
                r.value, r.var_beta, r.gluevar, r.slidevar, r.cvar_alpha, r.weight
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(100_000)
}
