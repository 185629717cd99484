//! Rolling-window backtest on a seeded regime-switching loss series.
//!
//! ```bash
//! cargo run --release --example rolling_backtest
//! ```

use slidevar::backtest::MixtureParams;
use slidevar::{
    regime_series, rolling_backtest, AversionFunction, GlueVaRWeights, LossSeries, MeasureKind, NormalizationFunction,
    RegimeSpec, SlideVaRConfig, WindowConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RegimeSpec::alternating(
        MixtureParams::normal(0.0, 1.0),
        MixtureParams::normal(0.0, 3.0),
        3000,
        4,
    );
    let series = regime_series(&spec, 3000, 17)?;
    let cfg = SlideVaRConfig::new(
        0.99,
        AversionFunction::exponential(0.95, 0.2)?,
        NormalizationFunction::piecewise_linear(1.0, 4.0)?,
    )?;
    let window = WindowConfig::default();
    let report = rolling_backtest(
        &LossSeries::from_losses(series.losses.clone()),
        &window,
        &cfg,
        &GlueVaRWeights::equal(),
    )?;

    println!("{} windows of width {}", report.records.len(), window.width);
    println!(
        "{:<11} {:>10} {:>8} {:>12}",
        "measure", "violations", "rate", "mean capital"
    );
    for kind in MeasureKind::ALL {
        let s = report.summary_for(kind);
        println!(
            "{:<11} {:>10} {:>8.4} {:>12.4}",
            kind.name(),
            s.violations,
            s.violation_rate,
            s.mean_capital
        );
    }

    let mut by_regime = [(0.0, 0usize); 2];
    for r in &report.records {
        if let Some(g) = series.window_regime(r.index, window.width) {
            by_regime[g].0 += r.weight;
            by_regime[g].1 += 1;
        }
    }
    for (label, (sum, n)) in ["calm", "turbulent"].iter().zip(by_regime) {
        println!("mean S(U) over {n} {label} windows: {:.4}", sum / n as f64);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
