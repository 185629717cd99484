//! Every example compiles as part of the test suite and runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $name;
    };
}

example!(quantiles_and_tails, "../examples/quantiles_and_tails.rs");
example!(classical_measures, "../examples/classical_measures.rs");
example!(aversion_families, "../examples/aversion_families.rs");
example!(slidevar_basics, "../examples/slidevar_basics.rs");
example!(mixture_sweep, "../examples/mixture_sweep.rs");
example!(rolling_backtest, "../examples/rolling_backtest.rs");
example!(price_ingestion, "../examples/price_ingestion.rs");
example!(cli_pipeline, "../examples/cli_pipeline.rs");
example!(property_check, "../examples/property_check.rs");

#[test]
fn quantiles_and_tails_runs() {
    quantiles_and_tails::run_example().unwrap();
}

#[test]
fn classical_measures_runs() {
    classical_measures::run_example().unwrap();
}

#[test]
fn aversion_families_runs() {
    aversion_families::run_example().unwrap();
}

#[test]
fn slidevar_basics_runs() {
    slidevar_basics::run_example().unwrap();
}

#[test]
fn mixture_sweep_runs() {
    mixture_sweep::run_example(5_000).unwrap();
}

#[test]
fn rolling_backtest_runs() {
    rolling_backtest::run_example().unwrap();
}

#[test]
fn price_ingestion_runs() {
    price_ingestion::run_example().unwrap();
}

#[test]
fn cli_pipeline_runs() {
    let dir = tempfile::tempdir().unwrap();
    let files = cli_pipeline::run_example(dir.path()).unwrap();
    assert_eq!(files.len(), 5);
    assert!(files.iter().all(|f| f.exists()));
}

#[test]
fn property_check_runs() {
    assert!(property_check::run_example(20).unwrap());
}
