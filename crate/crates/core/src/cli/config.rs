//! TOML run configuration. Every section is optional; omitted values take
//! the reference settings: `α = 0.99`, `β = 0.95`, exponential
//! `φ` with `γ = 0.2`, equal GlueVaR weights, window width 250.
//!
//! ```toml
//! [measure]
//! alpha = 0.99
//! beta = 0.95
//!
//! [aversion]
//! family = "exponential"
//! gamma = 0.2
//!
//! [normalization]
//! family = "piecewise-linear"
//! a = 1.0
//! b = 4.0
//!
//! [window]
//! width = 250
//!
//! [sweep]
//! parameters = ["sigma1", "mu1"]
//! samples = 100000
//! seed = 42
//!
//! [output]
//! directory = "out"
//! format = "csv"
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::aversion::AversionSpec;
use crate::backtest::{MixtureParams, RegimeSpec, SweepSpec, SweptParameter, WindowConfig};
use crate::measures::GlueVaRWeights;
use crate::normalization::NormalizationSpec;
use crate::properties::CheckConfig;
use crate::slide::SlideVaRSpec;

/// Thresholds used when `[normalization]` is omitted, for the Gaussian
/// mixture sweeps.
pub const SIMULATION_THRESHOLDS: (f64, f64) = (20.0, 40.0);
/// Thresholds used when `[normalization]` is omitted, for percent
/// log-losses (`compute` and `backtest`).
pub const EMPIRICAL_THRESHOLDS: (f64, f64) = (1.0, 4.0);

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub measure: MeasureSection,
    pub aversion: AversionSpec,
    pub normalization: Option<NormalizationSpec>,
    pub gluevar: GlueVarSection,
    pub window: WindowConfig,
    pub sweep: SweepSection,
    pub synthetic: SyntheticSection,
    pub check: CheckConfig,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeasureSection {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for MeasureSection {
    fn default() -> Self {
        Self {
            alpha: 0.99,
            beta: 0.95,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GlueVarSection {
    pub weights: GlueVaRWeights,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Which grids to run, in order.
    pub parameters: Vec<SweptParameter>,
    pub samples: usize,
    /// Required unless `--seed` is given.
    pub seed: Option<u64>,
    /// Overrides the default `σ₁` grid.
    pub sigma1_values: Option<Vec<f64>>,
    /// Overrides the default `μ₁` grid.
    pub mu1_values: Option<Vec<f64>>,
    pub histogram_bins: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            parameters: vec![SweptParameter::Sigma1, SweptParameter::Mu1],
            samples: 100_000,
            seed: None,
            sigma1_values: None,
            mu1_values: None,
            histogram_bins: 100,
        }
    }
}

impl SweepSection {
    pub fn specs(&self, seed: u64) -> Vec<SweepSpec> {
        self.parameters
            .iter()
            .map(|p| {
                let (mut spec, values) = match p {
                    SweptParameter::Sigma1 => (SweepSpec::sigma1_grid(self.samples, seed), &self.sigma1_values),
                    SweptParameter::Mu1 => (SweepSpec::mu1_grid(self.samples, seed), &self.mu1_values),
                };
                if let Some(v) = values {
                    spec.values = v.clone();
                }
                spec
            })
            .collect()
    }
}

/// Regime-switching series used by `backtest` when no `--data` is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SyntheticSection {
    pub length: usize,
    pub switches: usize,
    pub calm: MixtureParams,
    pub turbulent: MixtureParams,
    /// Required unless `--seed` is given.
    pub seed: Option<u64>,
}

impl Default for SyntheticSection {
    fn default() -> Self {
        Self {
            length: 3000,
            switches: 4,
            calm: MixtureParams::normal(0.0, 1.0),
            turbulent: MixtureParams::normal(0.0, 3.0),
            seed: None,
        }
    }
}

impl SyntheticSection {
    pub fn regime_spec(&self) -> RegimeSpec {
        RegimeSpec::alternating(self.calm, self.turbulent, self.length, self.switches)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::JsonLines => "jsonl",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub directory: PathBuf,
    pub format: OutputFormat,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("run configuration serializes")
    }

    /// The SlideVaR specification, filling in `default` thresholds when the
    /// normalization section is absent.
    pub fn slide_spec(&self, default: (f64, f64)) -> SlideVaRSpec {
        SlideVaRSpec {
            alpha: self.measure.alpha,
            beta: self.measure.beta,
            aversion: self.aversion.clone(),
            normalization: self.normalization.unwrap_or(NormalizationSpec::PiecewiseLinear {
                a: default.0,
                b: default.1,
            }),
        }
    }

    /// Directory override from the command line, else the configured one.
    pub fn output_dir(&self, cli: Option<&Path>) -> PathBuf {
        cli.map(Path::to_path_buf)
            .unwrap_or_else(|| self.output.directory.clone())
    }
}
