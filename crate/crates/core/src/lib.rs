//! SlideVaR and the classical risk measures it is built from.
//!
//! The crate is organised bottom-up:
//!
//! - [`empirical`]: sorted loss scenarios, the exact step quantile function,
//!   aligned scenario algebra and the seeded Gaussian-mixture sampler.
//! - [`measures`]: VaR, CVaR, spectral, distortion, GlueVaR and ΛVaR.
//! - [`aversion`] and [`normalization`]: the risk-aversion functions `φ_β`
//!   and the normalization functions `S`.
//! - [`slide`]: tail thickness, SlideVaR and the risk-tail region.
//! - [`backtest`]: rolling-window historical simulation and mixture sweeps.
//! - [`properties`]: randomized checks of the SlideVaR properties, shared by
//!   the `check` subcommand and the test suites.
//! - [`cli`]: configuration, price ingestion, table output and the
//!   subcommands behind the `slidevar` binary.
//!
//! ```
//! use slidevar::{AversionFunction, EmpiricalDistribution, NormalizationFunction, SlideVaRConfig};
//!
//! let losses = EmpiricalDistribution::new((1..=100).map(f64::from).collect()).unwrap();
//! let cfg = SlideVaRConfig::new(
//!     0.99,
//!     AversionFunction::flat(0.95).unwrap(),
//!     NormalizationFunction::piecewise_linear(96.0, 100.0).unwrap(),
//! )
//! .unwrap();
//! let v = slidevar::slide_var(&losses, &cfg).unwrap();
//! assert!((v - 98.0).abs() < 1e-12);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aversion;
pub mod backtest;
pub mod cli;
pub mod empirical;
pub mod error;
pub mod measures;
pub mod normalization;
pub mod properties;
pub mod slide;

pub use aversion::{AversionFamily, AversionFunction, AversionSpec, CustomAversion};
pub use backtest::{
    regime_series, rolling_backtest, run_sweep, BacktestReport, LossSeries, MeasureKind, RegimeSpec, SweepSpec,
    SweepTable, WindowConfig, WindowRecord,
};
pub use empirical::{
    sample_mixture, Combine, EmpiricalDistribution, GaussianMixture, GaussianMixtureSpec, ScenarioSet,
};
pub use error::{Error, Result};
pub use measures::{
    cvar, distortion, gluevar, lambda_var, spectral, var, DistortionFunction, GlueVaRWeights, LambdaFunction, LambdaVaR,
};
pub use normalization::{NormalizationFunction, NormalizationSpec};
pub use properties::{run_all, CheckConfig, PropertyOutcome};
pub use slide::{normalize, risk_tail_membership, slide_var, tail_thickness, SlideVaR, SlideVaRConfig, SlideVaRSpec};
