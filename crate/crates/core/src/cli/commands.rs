//! The four subcommands. Each returns the tables it produced; [`emit`]
//! writes them.

use std::path::{Path, PathBuf};

use super::config::{OutputFormat, RunConfig, EMPIRICAL_THRESHOLDS, SIMULATION_THRESHOLDS};
use super::ingest::ingest;
use super::output::{Cell, Table};
use super::CliError;
use crate::backtest::{
    regime_series, rolling_backtest, run_sweep, BacktestReport, LossSeries, MeasureKind, RegimeSeries, SweepTable,
};
use crate::empirical::EmpiricalDistribution;
use crate::measures::{cvar, gluevar};
use crate::properties::{run_all, PropertyOutcome};
use crate::slide::{SlideVaR, SlideVaRConfig};

/// One distribution, every measure.
pub fn cmd_compute(config: &RunConfig, losses: &LossSeries) -> Result<Table, CliError> {
    let cfg = build(config, EMPIRICAL_THRESHOLDS)?;
    let d = EmpiricalDistribution::from_slice(&losses.losses).map_err(CliError::Domain)?;
    let s = SlideVaR::evaluate(&d, &cfg).map_err(CliError::Domain)?;
    let cvar_beta = cvar(&d, cfg.beta()).map_err(CliError::Domain)?;
    let glue = gluevar(&d, cfg.beta(), cfg.alpha(), &config.gluevar.weights).map_err(CliError::Domain)?;
    let mut t = Table::new(
        "measures",
        vec![
            "scenarios",
            "var_beta",
            "cvar_alpha",
            "cvar_beta",
            "gluevar",
            "slidevar",
            "tail_thickness",
            "weight",
        ],
    );
    t.push(vec![
        d.len().into(),
        s.var_beta.into(),
        s.cvar_alpha.into(),
        cvar_beta.into(),
        glue.into(),
        s.value.into(),
        s.tail_thickness.into(),
        s.weight.into(),
    ]);
    Ok(t)
}

/// Mixture sweeps: for each swept parameter a measure table and a long-form
/// histogram table keyed by the swept value.
pub fn cmd_simulate(config: &RunConfig, seed: u64) -> Result<Vec<Table>, CliError> {
    let cfg = build(config, SIMULATION_THRESHOLDS)?;
    let mut tables = Vec::new();
    for spec in config.sweep.specs(seed) {
        let sweep = run_sweep(&spec, &cfg, &config.gluevar.weights).map_err(classify)?;
        tables.push(sweep_table(&sweep));
        tables.push(histogram_table(&sweep, config.sweep.histogram_bins));
    }
    Ok(tables)
}

pub fn sweep_table(sweep: &SweepTable) -> Table {
    let mut t = Table::new(
        format!("sweep_{}", sweep.parameter.name()),
        vec![
            "value",
            "mu1",
            "sigma1",
            "mu2",
            "sigma2",
            "samples",
            "var_beta",
            "cvar_alpha",
            "cvar_beta",
            "gluevar",
            "slidevar",
            "tail_thickness",
            "weight",
        ],
    );
    for r in &sweep.rows {
        t.push(vec![
            r.value.into(),
            r.mixture.mu1.into(),
            r.mixture.sigma1.into(),
            r.mixture.mu2.into(),
            r.mixture.sigma2.into(),
            r.mixture.samples.into(),
            r.var_beta.into(),
            r.cvar_alpha.into(),
            r.cvar_beta.into(),
            r.gluevar.into(),
            r.slidevar.into(),
            r.tail_thickness.into(),
            r.weight.into(),
        ]);
    }
    t
}

pub fn histogram_table(sweep: &SweepTable, bins: usize) -> Table {
    let mut t = Table::new(
        format!("histogram_{}", sweep.parameter.name()),
        vec!["value", "bin_lo", "bin_hi", "count", "density"],
    );
    for r in &sweep.rows {
        for b in r.distribution.histogram(bins) {
            t.push(vec![
                r.value.into(),
                b.lo.into(),
                b.hi.into(),
                b.count.into(),
                b.density.into(),
            ]);
        }
    }
    t
}

/// Input for [`cmd_backtest`]: a loaded file or a seeded synthetic series.
#[derive(Debug, Clone)]
pub enum BacktestInput {
    Series(LossSeries),
    Synthetic { seed: u64 },
}

pub fn cmd_backtest(config: &RunConfig, input: BacktestInput) -> Result<Vec<Table>, CliError> {
    let cfg = build(config, EMPIRICAL_THRESHOLDS)?;
    config.window.validate().map_err(CliError::Config)?;
    let (series, synthetic) = match input {
        BacktestInput::Series(s) => (s, None),
        BacktestInput::Synthetic { seed } => {
            let spec = config.synthetic.regime_spec();
            let generated = regime_series(&spec, config.synthetic.length, seed).map_err(CliError::Config)?;
            (LossSeries::from_losses(generated.losses.clone()), Some(generated))
        }
    };
    let report = rolling_backtest(&series, &config.window, &cfg, &config.gluevar.weights).map_err(classify)?;
    let mut tables = vec![
        window_table(&report, synthetic.as_ref(), config.window.width),
        summary_table(&report),
    ];
    if let Some(g) = &synthetic {
        tables.push(series_table(g));
    }
    Ok(tables)
}

pub fn window_table(report: &BacktestReport, synthetic: Option<&RegimeSeries>, width: usize) -> Table {
    let mut t = Table::new(
        "backtest_windows",
        vec![
            "index",
            "date",
            "regime",
            "var_beta",
            "cvar_alpha",
            "gluevar",
            "slidevar",
            "tail_thickness",
            "weight",
            "realized",
            "violation_var_beta",
            "violation_cvar_alpha",
            "violation_gluevar",
            "violation_slidevar",
        ],
    );
    for r in &report.records {
        let regime = synthetic.and_then(|g| g.window_regime(r.index, width));
        let mut row = vec![
            r.index.into(),
            r.date.map(|d| d.to_string()).into(),
            regime.into(),
            r.var_beta.into(),
            r.cvar_alpha.into(),
            r.gluevar.into(),
            r.slidevar.into(),
            r.tail_thickness.into(),
            r.weight.into(),
            r.realized.into(),
        ];
        row.extend(MeasureKind::ALL.iter().map(|&k| Cell::from(r.violated(k))));
        t.push(row);
    }
    t
}

pub fn summary_table(report: &BacktestReport) -> Table {
    let mut t = Table::new(
        "backtest_summary",
        vec![
            "measure",
            "windows",
            "violations",
            "violation_rate",
            "mean_capital",
            "mean_excess",
        ],
    );
    for s in &report.summary {
        t.push(vec![
            s.kind.name().into(),
            report.records.len().into(),
            s.violations.into(),
            s.violation_rate.into(),
            s.mean_capital.into(),
            s.mean_excess.into(),
        ]);
    }
    t
}

pub fn series_table(g: &RegimeSeries) -> Table {
    let mut t = Table::new("synthetic_series", vec!["t", "regime", "loss"]);
    for (i, (&loss, &regime)) in g.losses.iter().zip(&g.regimes).enumerate() {
        t.push(vec![i.into(), regime.into(), loss.into()]);
    }
    t
}

pub fn cmd_check(config: &RunConfig, seed: Option<u64>) -> (Table, Vec<PropertyOutcome>) {
    let mut check = config.check;
    if let Some(s) = seed {
        check.seed = s;
    }
    let outcomes = run_all(&check);
    let mut t = Table::new(
        "check",
        vec!["id", "name", "seed", "cases", "failures", "passed", "counterexample"],
    );
    for o in &outcomes {
        t.push(vec![
            o.id.into(),
            o.name.into(),
            Cell::Int(check.seed),
            o.cases.into(),
            o.failures.into(),
            o.passed().into(),
            o.counterexample.clone().into(),
        ]);
    }
    (t, outcomes)
}

/// Writes every table into `dir` in order.
pub fn emit(tables: &[Table], dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>, CliError> {
    tables
        .iter()
        .map(|t| {
            t.write(dir, format)
                .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
        })
        .collect()
}

fn build(config: &RunConfig, default: (f64, f64)) -> Result<SlideVaRConfig, CliError> {
    config.slide_spec(default).build().map_err(CliError::Config)
}

/// Input-shape problems are reported as such; everything else as numerical.
fn classify(e: crate::Error) -> CliError {
    match e {
        crate::Error::Input(_) => CliError::Input(e.to_string()),
        crate::Error::Validation { .. } => CliError::Config(e),
        other => CliError::Domain(other),
    }
}

pub(super) fn load(path: &Path) -> Result<LossSeries, CliError> {
    ingest(path).map_err(CliError::from)
}
