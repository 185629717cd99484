//! Historical-simulation backtests and Gaussian-mixture sweeps.
//!
//! A backtest slides a window of `width` consecutive losses over a series.
//! Each window's empirical distribution yields `VaR_β`, `CVaR_α`, GlueVaR and
//! SlideVaR, which are compared with the loss immediately after the window.
//! Windows are evaluated in parallel; records come back in series order.

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::empirical::{seeded_rng, EmpiricalDistribution, GaussianMixture, GaussianMixtureSpec};
use crate::error::{invalid, Error, Result};
use crate::measures::{cvar, gluevar, GlueVaRWeights};
use crate::slide::{SlideVaR, SlideVaRConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowConfig {
    pub width: usize,
    pub step: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self { width: 250, step: 1 }
    }
}

impl WindowConfig {
    pub fn new(width: usize, step: usize) -> Result<Self> {
        let wc = Self { width, step };
        wc.validate()?;
        Ok(wc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < 2 {
            return Err(invalid(
                "window",
                format!("width must be at least 2, got {}", self.width),
            ));
        }
        if self.step < 1 {
            return Err(invalid("window", "step must be at least 1"));
        }
        Ok(())
    }

    /// Number of evaluation windows over a series of `len` losses.
    pub fn window_count(&self, len: usize) -> usize {
        if len <= self.width {
            0
        } else {
            (len - self.width - 1) / self.step + 1
        }
    }
}

/// Time-ordered losses, optionally dated. `dates[t]` is the date of `losses[t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossSeries {
    pub dates: Option<Vec<NaiveDate>>,
    pub losses: Vec<f64>,
}

impl LossSeries {
    pub fn from_losses(losses: Vec<f64>) -> Self {
        Self { dates: None, losses }
    }

    pub fn len(&self) -> usize {
        self.losses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.losses.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    VarBeta,
    CvarAlpha,
    GlueVar,
    SlideVar,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::VarBeta,
        MeasureKind::CvarAlpha,
        MeasureKind::GlueVar,
        MeasureKind::SlideVar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::VarBeta => "var_beta",
            MeasureKind::CvarAlpha => "cvar_alpha",
            MeasureKind::GlueVar => "gluevar",
            MeasureKind::SlideVar => "slidevar",
        }
    }
}

/// One window: measures estimated from `losses[index - width .. index]` and
/// the realized loss at `index`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowRecord {
    /// Index of the predicted (out-of-sample) observation.
    pub index: usize,
    pub date: Option<NaiveDate>,
    pub var_beta: f64,
    pub cvar_alpha: f64,
    pub gluevar: f64,
    pub slidevar: f64,
    pub tail_thickness: f64,
    pub weight: f64,
    pub realized: f64,
}

impl WindowRecord {
    pub fn measure(&self, kind: MeasureKind) -> f64 {
        match kind {
            MeasureKind::VarBeta => self.var_beta,
            MeasureKind::CvarAlpha => self.cvar_alpha,
            MeasureKind::GlueVar => self.gluevar,
            MeasureKind::SlideVar => self.slidevar,
        }
    }

    /// Realized loss strictly above the forecast.
    pub fn violated(&self, kind: MeasureKind) -> bool {
        self.realized > self.measure(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSummary {
    pub kind: MeasureKind,
    pub violations: usize,
    pub violation_rate: f64,
    /// Mean forecast across windows (reserve capital).
    pub mean_capital: f64,
    /// Mean of `realized - forecast` on violation windows; `None` without
    /// violations.
    pub mean_excess: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BacktestReport {
    pub records: Vec<WindowRecord>,
    pub summary: Vec<MeasureSummary>,
}

impl BacktestReport {
    fn from_records(records: Vec<WindowRecord>) -> Self {
        let n = records.len() as f64;
        let summary = MeasureKind::ALL
            .iter()
            .map(|&kind| {
                let violations: Vec<f64> = records
                    .iter()
                    .filter(|r| r.violated(kind))
                    .map(|r| r.realized - r.measure(kind))
                    .collect();
                MeasureSummary {
                    kind,
                    violations: violations.len(),
                    violation_rate: violations.len() as f64 / n,
                    mean_capital: records.iter().map(|r| r.measure(kind)).sum::<f64>() / n,
                    mean_excess: (!violations.is_empty())
                        .then(|| violations.iter().sum::<f64>() / violations.len() as f64),
                }
            })
            .collect();
        Self { records, summary }
    }

    pub fn summary_for(&self, kind: MeasureKind) -> &MeasureSummary {
        self.summary
            .iter()
            .find(|s| s.kind == kind)
            .expect("summary holds every measure kind")
    }

    pub fn mean_weight(&self) -> f64 {
        self.records.iter().map(|r| r.weight).sum::<f64>() / self.records.len() as f64
    }
}

/// Rolling-window historical simulation of all four measures.
pub fn rolling_backtest(
    series: &LossSeries,
    wc: &WindowConfig,
    cfg: &SlideVaRConfig,
    gw: &GlueVaRWeights,
) -> Result<BacktestReport> {
    wc.validate()?;
    if let Some(dates) = &series.dates {
        if dates.len() != series.len() {
            return Err(Error::Input(format!(
                "{} dates for {} losses",
                dates.len(),
                series.len()
            )));
        }
    }
    let count = wc.window_count(series.len());
    if count == 0 {
        return Err(Error::Input(format!(
            "series of {} losses is too short for window width {}; need at least {}",
            series.len(),
            wc.width,
            wc.width + 1
        )));
    }
    let records = (0..count)
        .into_par_iter()
        .map(|i| {
            let index = wc.width + i * wc.step;
            let d = EmpiricalDistribution::from_slice(&series.losses[index - wc.width..index])?;
            let slide = SlideVaR::evaluate(&d, cfg)?;
            Ok(WindowRecord {
                index,
                date: series.dates.as_ref().map(|d| d[index]),
                var_beta: slide.var_beta,
                cvar_alpha: slide.cvar_alpha,
                gluevar: gluevar(&d, cfg.beta(), cfg.alpha(), gw)?,
                slidevar: slide.value,
                tail_thickness: slide.tail_thickness,
                weight: slide.weight,
                realized: series.losses[index],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BacktestReport::from_records(records))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweptParameter {
    Sigma1,
    Mu1,
}

impl SweptParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweptParameter::Sigma1 => "sigma1",
            SweptParameter::Mu1 => "mu1",
        }
    }
}

/// Mixture parameters without sample count or seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureParams {
    pub mu1: f64,
    pub sigma1: f64,
    pub mu2: f64,
    pub sigma2: f64,
}

impl MixtureParams {
    pub fn normal(mu: f64, sigma: f64) -> Self {
        Self {
            mu1: mu,
            sigma1: sigma,
            mu2: mu,
            sigma2: sigma,
        }
    }

    pub fn mixture(&self) -> Result<GaussianMixture> {
        GaussianMixture::new(self.mu1, self.sigma1, self.mu2, self.sigma2)
    }

    fn with(self, parameter: SweptParameter, value: f64) -> Self {
        match parameter {
            SweptParameter::Sigma1 => Self { sigma1: value, ..self },
            SweptParameter::Mu1 => Self { mu1: value, ..self },
        }
    }
}

/// One swept mixture parameter over a base mixture. Every swept value is
/// sampled with the same seed (common random numbers).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: MixtureParams,
    pub parameter: SweptParameter,
    pub values: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

impl SweepSpec {
    /// `μ₁ = μ₂ = 0`, `σ₂ = 5`, `σ₁ ∈ {10, 15, 20, 25}`.
    pub fn sigma1_grid(samples: usize, seed: u64) -> Self {
        Self {
            base: MixtureParams {
                mu1: 0.0,
                sigma1: 10.0,
                mu2: 0.0,
                sigma2: 5.0,
            },
            parameter: SweptParameter::Sigma1,
            values: vec![10.0, 15.0, 20.0, 25.0],
            samples,
            seed,
        }
    }

    /// `σ₁ = 10`, `μ₂ = 0`, `σ₂ = 5`, `μ₁ ∈ {-5, 10, 20, 30}`.
    pub fn mu1_grid(samples: usize, seed: u64) -> Self {
        Self {
            base: MixtureParams {
                mu1: 0.0,
                sigma1: 10.0,
                mu2: 0.0,
                sigma2: 5.0,
            },
            parameter: SweptParameter::Mu1,
            values: vec![-5.0, 10.0, 20.0, 30.0],
            samples,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(invalid("sweep", "no values to sweep"));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(invalid("sweep", format!("non-finite swept value {v}")));
        }
        if self.samples == 0 {
            return Err(invalid("sweep", "sample count must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub mixture: GaussianMixtureSpec,
    pub distribution: EmpiricalDistribution,
    pub var_beta: f64,
    pub cvar_alpha: f64,
    pub cvar_beta: f64,
    pub gluevar: f64,
    pub slidevar: f64,
    pub tail_thickness: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub parameter: SweptParameter,
    pub rows: Vec<SweepRow>,
}

/// Samples the mixture at each swept value and evaluates every measure.
pub fn run_sweep(spec: &SweepSpec, cfg: &SlideVaRConfig, gw: &GlueVaRWeights) -> Result<SweepTable> {
    spec.validate()?;
    let rows = spec
        .values
        .par_iter()
        .map(|&value| {
            let params = spec.base.with(spec.parameter, value);
            let mixture = GaussianMixtureSpec {
                mu1: params.mu1,
                sigma1: params.sigma1,
                mu2: params.mu2,
                sigma2: params.sigma2,
                samples: spec.samples,
                seed: spec.seed,
            };
            let distribution = crate::empirical::sample_mixture(&mixture)?;
            let slide = SlideVaR::evaluate(&distribution, cfg)?;
            Ok(SweepRow {
                value,
                mixture,
                var_beta: slide.var_beta,
                cvar_alpha: slide.cvar_alpha,
                cvar_beta: cvar(&distribution, cfg.beta())?,
                gluevar: gluevar(&distribution, cfg.beta(), cfg.alpha(), gw)?,
                slidevar: slide.value,
                tail_thickness: slide.tail_thickness,
                weight: slide.weight,
                distribution,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        parameter: spec.parameter,
        rows,
    })
}

/// From `start` on, draws come from `regimes[regime]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeSwitch {
    pub start: usize,
    pub regime: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeSpec {
    pub regimes: Vec<MixtureParams>,
    pub schedule: Vec<RegimeSwitch>,
}

impl RegimeSpec {
    /// Two regimes alternating `calm, turbulent, calm, ...` with `switches`
    /// evenly spaced switches over `length` steps.
    pub fn alternating(calm: MixtureParams, turbulent: MixtureParams, length: usize, switches: usize) -> Self {
        let segment = length / (switches + 1);
        let schedule = (0..=switches)
            .map(|i| RegimeSwitch {
                start: i * segment,
                regime: i % 2,
            })
            .collect();
        Self {
            regimes: vec![calm, turbulent],
            schedule,
        }
    }

    fn validate(&self, length: usize) -> Result<Vec<GaussianMixture>> {
        const WHAT: &str = "regime schedule";
        let mixtures = self
            .regimes
            .iter()
            .map(MixtureParams::mixture)
            .collect::<Result<Vec<_>>>()?;
        let Some(first) = self.schedule.first() else {
            return Err(invalid(WHAT, "schedule is empty"));
        };
        if first.start != 0 {
            return Err(invalid(
                WHAT,
                format!("first switch must start at 0, got {}", first.start),
            ));
        }
        if self.schedule.windows(2).any(|w| w[1].start <= w[0].start) {
            return Err(invalid(WHAT, "switch times must be strictly increasing"));
        }
        if let Some(s) = self.schedule.iter().find(|s| s.regime >= mixtures.len()) {
            return Err(invalid(WHAT, format!("unknown regime {} at t = {}", s.regime, s.start)));
        }
        if let Some(s) = self.schedule.iter().find(|s| s.start >= length) {
            return Err(invalid(
                WHAT,
                format!("switch at t = {} beyond series length {length}", s.start),
            ));
        }
        Ok(mixtures)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeSeries {
    pub losses: Vec<f64>,
    /// Active regime at each step.
    pub regimes: Vec<usize>,
}

impl RegimeSeries {
    /// The regime shared by every observation of the window ending before
    /// `index`, or `None` if the window straddles a switch.
    pub fn window_regime(&self, index: usize, width: usize) -> Option<usize> {
        let window = &self.regimes[index.checked_sub(width)?..index];
        let first = *window.first()?;
        window.iter().all(|&r| r == first).then_some(first)
    }
}

/// Seeded loss series drawn from the active regime's mixture at each step.
pub fn regime_series(spec: &RegimeSpec, length: usize, seed: u64) -> Result<RegimeSeries> {
    let mixtures = spec.validate(length)?;
    let mut rng = seeded_rng(seed);
    let mut losses = Vec::with_capacity(length);
    let mut regimes = Vec::with_capacity(length);
    let mut next = 0;
    let mut active = 0;
    for t in 0..length {
        while next < spec.schedule.len() && spec.schedule[next].start == t {
            active = spec.schedule[next].regime;
            next += 1;
        }
        losses.push(mixtures[active].draw(&mut rng));
        regimes.push(active);
    }
    Ok(RegimeSeries { losses, regimes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aversion::AversionFunction;
    use crate::normalization::NormalizationFunction;

    fn reference_cfg(a: f64, b: f64) -> SlideVaRConfig {
        SlideVaRConfig::new(
            0.99,
            AversionFunction::exponential(0.95, 0.2).unwrap(),
            NormalizationFunction::piecewise_linear(a, b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn window_counts() {
        let wc = WindowConfig::default();
        assert_eq!(wc.window_count(250), 0);
        assert_eq!(wc.window_count(251), 1);
        assert_eq!(wc.window_count(260), 10);
        assert_eq!(WindowConfig::new(10, 3).unwrap().window_count(20), 4);
        assert!(WindowConfig::new(1, 1).is_err());
        assert!(WindowConfig::new(10, 0).is_err());
    }

    #[test]
    fn constant_series_has_no_violations() {
        let series = LossSeries::from_losses(vec![1.5; 300]);
        let r = rolling_backtest(
            &series,
            &WindowConfig::default(),
            &reference_cfg(1.0, 4.0),
            &GlueVaRWeights::equal(),
        )
        .unwrap();
        assert_eq!(r.records.len(), 50);
        for rec in &r.records {
            for k in MeasureKind::ALL {
                assert_eq!(rec.measure(k), 1.5);
                assert!(!rec.violated(k));
            }
        }
        assert!(r.summary.iter().all(|s| s.violations == 0 && s.mean_excess.is_none()));
    }

    #[test]
    fn boundary_length_gives_one_window() {
        let series = LossSeries::from_losses((0..251).map(|i| (i % 7) as f64).collect());
        let r = rolling_backtest(
            &series,
            &WindowConfig::default(),
            &reference_cfg(1.0, 4.0),
            &GlueVaRWeights::equal(),
        )
        .unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].index, 250);
        assert_eq!(r.records[0].realized, series.losses[250]);
    }

    #[test]
    fn short_series_reports_minimum() {
        let series = LossSeries::from_losses(vec![0.0; 250]);
        let err = rolling_backtest(
            &series,
            &WindowConfig::default(),
            &reference_cfg(1.0, 4.0),
            &GlueVaRWeights::equal(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("251"), "{err}");
    }

    #[test]
    fn regime_schedule_validation() {
        let calm = MixtureParams::normal(0.0, 1.0);
        let bad_start = RegimeSpec {
            regimes: vec![calm],
            schedule: vec![RegimeSwitch { start: 5, regime: 0 }],
        };
        assert!(regime_series(&bad_start, 10, 1).is_err());
        let unknown = RegimeSpec {
            regimes: vec![calm],
            schedule: vec![RegimeSwitch { start: 0, regime: 1 }],
        };
        assert!(regime_series(&unknown, 10, 1).is_err());
        let unsorted = RegimeSpec {
            regimes: vec![calm, calm],
            schedule: vec![
                RegimeSwitch { start: 0, regime: 0 },
                RegimeSwitch { start: 0, regime: 1 },
            ],
        };
        assert!(regime_series(&unsorted, 10, 1).is_err());
    }

    #[test]
    fn single_regime_matches_mixture_sampler() {
        let params = MixtureParams {
            mu1: 3.0,
            sigma1: 2.0,
            mu2: -1.0,
            sigma2: 0.5,
        };
        let spec = RegimeSpec {
            regimes: vec![params],
            schedule: vec![RegimeSwitch { start: 0, regime: 0 }],
        };
        let series = regime_series(&spec, 400, 11).unwrap();
        let direct = crate::empirical::sample_mixture(&GaussianMixtureSpec {
            mu1: 3.0,
            sigma1: 2.0,
            mu2: -1.0,
            sigma2: 0.5,
            samples: 400,
            seed: 11,
        })
        .unwrap();
        assert_eq!(EmpiricalDistribution::new(series.losses).unwrap(), direct);
    }

    #[test]
    fn window_regime_detects_straddles() {
        let s = RegimeSeries {
            losses: vec![0.0; 6],
            regimes: vec![0, 0, 0, 1, 1, 1],
        };
        assert_eq!(s.window_regime(3, 3), Some(0));
        assert_eq!(s.window_regime(4, 3), None);
        assert_eq!(s.window_regime(6, 3), Some(1));
        assert_eq!(s.window_regime(2, 3), None);
    }
}
