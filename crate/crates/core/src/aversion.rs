//! Risk-aversion functions `φ_β`: zero below the level `β`, non-negative and
//! non-decreasing on `[β, 1]`, with unit mass.
//!
//! Built-in families carry exact antiderivatives so tail integrals against an
//! empirical quantile function stay exact. Custom functions may supply one;
//! otherwise their mass is computed by double-exponential quadrature.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::empirical::QuantileWeight;
use crate::error::{invalid, Admissibility, Error, Result};

/// Allowed deviation of `∫_β^1 φ` from one.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Grid spacing of the construction-time positivity and monotonicity scan.
pub const ADMISSIBILITY_GRID: f64 = 1e-4;
/// Absolute error target for quadrature of custom functions.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied aversion density, optionally with its antiderivative.
#[derive(Clone)]
pub struct CustomAversion {
    label: String,
    density: RealFn,
    antiderivative: Option<RealFn>,
}

impl CustomAversion {
    pub fn new(label: impl Into<String>, density: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            density: Arc::new(density),
            antiderivative: None,
        }
    }

    pub fn with_antiderivative(mut self, antiderivative: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.antiderivative = Some(Arc::new(antiderivative));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for CustomAversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomAversion")
            .field("label", &self.label)
            .field("antiderivative", &self.antiderivative.is_some())
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum AversionFamily {
    /// Convex: `e^{(p-1)/γ} / (γ (1 - e^{(β-1)/γ}))`, `γ ∈ (0, 1]`.
    Exponential {
        gamma: f64,
    },
    /// Convex: `(1-γ)(1-p)^{-γ} / (1-β)^{1-γ}`, `γ ∈ [0, 1)`.
    PowerConvex {
        gamma: f64,
    },
    /// Concave: `(1+γ) p^γ / (1 - β^{1+γ})`, `γ ∈ [0, 1]`.
    PowerConcave {
        gamma: f64,
    },
    /// `1/(1-β)`: the CVaR spectrum.
    Flat,
    /// Sum of three flat kernels starting at `β < β₁ < β₂`.
    Step {
        levels: [f64; 2],
        weights: [f64; 3],
    },
    Custom(CustomAversion),
}

impl AversionFamily {
    pub fn name(&self) -> &str {
        match self {
            AversionFamily::Exponential { .. } => "exponential",
            AversionFamily::PowerConvex { .. } => "power-convex",
            AversionFamily::PowerConcave { .. } => "power-concave",
            AversionFamily::Flat => "flat",
            AversionFamily::Step { .. } => "step",
            AversionFamily::Custom(c) => c.label(),
        }
    }
}

/// An admissible `φ_β`. Construction validates parameters and runs the
/// admissibility scan, so every value of this type is usable as a spectrum.
#[derive(Debug, Clone)]
pub struct AversionFunction {
    beta: f64,
    family: AversionFamily,
}

impl AversionFunction {
    pub fn new(beta: f64, family: AversionFamily) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::Domain(format!("aversion level beta = {beta} outside [0, 1)")));
        }
        match &family {
            AversionFamily::Exponential { gamma } => {
                if !(*gamma > 0.0 && *gamma <= 1.0) {
                    return Err(invalid(
                        "exponential aversion",
                        format!("gamma = {gamma} outside (0, 1]"),
                    ));
                }
            }
            AversionFamily::PowerConvex { gamma } => {
                if !(0.0..1.0).contains(gamma) {
                    return Err(invalid(
                        "power-convex aversion",
                        format!("gamma = {gamma} outside [0, 1)"),
                    ));
                }
            }
            AversionFamily::PowerConcave { gamma } => {
                if !(0.0..=1.0).contains(gamma) {
                    return Err(invalid(
                        "power-concave aversion",
                        format!("gamma = {gamma} outside [0, 1]"),
                    ));
                }
            }
            AversionFamily::Flat | AversionFamily::Custom(_) => {}
            AversionFamily::Step { levels, weights } => {
                let [b1, b2] = *levels;
                if !(beta < b1 && b1 < b2 && b2 < 1.0) {
                    return Err(invalid(
                        "step aversion",
                        format!("levels must satisfy beta < beta1 < beta2 < 1, got {beta}, {b1}, {b2}"),
                    ));
                }
                if weights.iter().any(|w| !(*w >= 0.0)) {
                    return Err(invalid("step aversion", format!("negative weight in {weights:?}")));
                }
                let sum: f64 = weights.iter().sum();
                if (sum - 1.0).abs() > NORM_TOLERANCE {
                    return Err(invalid("step aversion", format!("weights sum to {sum}, expected 1")));
                }
            }
        }
        let f = Self { beta, family };
        f.check_admissible()?;
        Ok(f)
    }

    pub fn exponential(beta: f64, gamma: f64) -> Result<Self> {
        Self::new(beta, AversionFamily::Exponential { gamma })
    }

    pub fn power_convex(beta: f64, gamma: f64) -> Result<Self> {
        Self::new(beta, AversionFamily::PowerConvex { gamma })
    }

    pub fn power_concave(beta: f64, gamma: f64) -> Result<Self> {
        Self::new(beta, AversionFamily::PowerConcave { gamma })
    }

    pub fn flat(beta: f64) -> Result<Self> {
        Self::new(beta, AversionFamily::Flat)
    }

    pub fn step(beta: f64, levels: [f64; 2], weights: [f64; 3]) -> Result<Self> {
        Self::new(beta, AversionFamily::Step { levels, weights })
    }

    pub fn custom(beta: f64, custom: CustomAversion) -> Result<Self> {
        Self::new(beta, AversionFamily::Custom(custom))
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn family(&self) -> &AversionFamily {
        &self.family
    }

    /// `φ_β(p)`; zero for `p < β`.
    pub fn density(&self, p: f64) -> f64 {
        if p < self.beta {
            return 0.0;
        }
        let beta = self.beta;
        match &self.family {
            AversionFamily::Exponential { gamma } => {
                ((p - 1.0) / gamma).exp() / (gamma * -((beta - 1.0) / gamma).exp_m1())
            }
            AversionFamily::PowerConvex { gamma } => {
                (1.0 - gamma) * (1.0 - p).powf(-gamma) / (1.0 - beta).powf(1.0 - gamma)
            }
            AversionFamily::PowerConcave { gamma } => (1.0 + gamma) * p.powf(*gamma) / (1.0 - beta.powf(1.0 + gamma)),
            AversionFamily::Flat => 1.0 / (1.0 - beta),
            AversionFamily::Step { levels, weights } => {
                let mut v = weights[0] / (1.0 - beta);
                for (level, w) in levels.iter().zip(&weights[1..]) {
                    if p >= *level {
                        v += w / (1.0 - level);
                    }
                }
                v
            }
            AversionFamily::Custom(c) => (c.density)(p),
        }
    }

    /// Antiderivative `Φ(p)` of `φ_β`, constant below `β`. `None` for custom
    /// functions that did not supply one.
    pub fn antiderivative(&self, p: f64) -> Option<f64> {
        let beta = self.beta;
        let p = p.clamp(beta, 1.0);
        let v = match &self.family {
            AversionFamily::Exponential { gamma } => ((p - 1.0) / gamma).exp() / -((beta - 1.0) / gamma).exp_m1(),
            AversionFamily::PowerConvex { gamma } => -(1.0 - p).powf(1.0 - gamma) / (1.0 - beta).powf(1.0 - gamma),
            AversionFamily::PowerConcave { gamma } => p.powf(1.0 + gamma) / (1.0 - beta.powf(1.0 + gamma)),
            AversionFamily::Flat => p / (1.0 - beta),
            AversionFamily::Step { levels, weights } => {
                let mut v = weights[0] * (p - beta) / (1.0 - beta);
                for (level, w) in levels.iter().zip(&weights[1..]) {
                    v += w * (p - level).max(0.0) / (1.0 - level);
                }
                v
            }
            AversionFamily::Custom(c) => (c.antiderivative.as_ref()?)(p),
        };
        Some(v)
    }

    /// `∫_lo^hi φ_β(p) dp`, or `None` if quadrature fails to converge.
    pub fn try_mass(&self, lo: f64, hi: f64) -> Option<f64> {
        let lo = lo.max(self.beta);
        if hi <= lo {
            return Some(0.0);
        }
        match (self.antiderivative(hi), self.antiderivative(lo)) {
            (Some(h), Some(l)) => Some(h - l),
            _ => {
                let AversionFamily::Custom(c) = &self.family else {
                    unreachable!("built-in families always have antiderivatives")
                };
                let density = &c.density;
                let out = quadrature::double_exponential::integrate(|p| density(p), lo, hi, QUADRATURE_TOLERANCE);
                (out.error_estimate <= QUADRATURE_TOLERANCE && out.integral.is_finite()).then_some(out.integral)
            }
        }
    }

    /// `‖φ_β‖ = ∫_β^1 φ_β`.
    pub fn norm(&self) -> Option<f64> {
        self.try_mass(self.beta, 1.0)
    }

    /// Positivity and monotonicity on a `1e-4` grid over `[β, 1)`, then unit
    /// norm within `1e-9`.
    pub fn check_admissible(&self) -> Result<()> {
        let mut previous: Option<f64> = None;
        let mut i = 0u64;
        loop {
            let p = self.beta + i as f64 * ADMISSIBILITY_GRID;
            if p >= 1.0 {
                break;
            }
            let value = self.density(p);
            if !(value >= 0.0) {
                return Err(Error::Admissibility(Admissibility::Positivity { at: p, value }));
            }
            if let Some(prev) = previous {
                if value < prev - 1e-12 * prev.abs() {
                    return Err(Error::Admissibility(Admissibility::Monotonicity {
                        at: p,
                        previous: prev,
                        value,
                    }));
                }
            }
            previous = Some(value);
            i += 1;
        }
        let norm = self.norm().ok_or(Error::Admissibility(Admissibility::Quadrature {
            lo: self.beta,
            hi: 1.0,
        }))?;
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Admissibility(Admissibility::Norm { norm }));
        }
        Ok(())
    }
}

impl QuantileWeight for AversionFunction {
    fn mass(&self, lo: f64, hi: f64) -> f64 {
        // Admissibility already proved the full-range quadrature converges;
        // sub-intervals of a converged integrand do not fail in practice.
        self.try_mass(lo, hi).unwrap_or(f64::NAN)
    }
}

/// Serializable description of an aversion family; `β` comes from the
/// surrounding configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AversionSpec {
    Exponential { gamma: f64 },
    PowerConvex { gamma: f64 },
    PowerConcave { gamma: f64 },
    Flat,
    Step { levels: [f64; 2], weights: [f64; 3] },
}

impl Default for AversionSpec {
    fn default() -> Self {
        AversionSpec::Exponential { gamma: 0.2 }
    }
}

impl AversionSpec {
    pub fn build(&self, beta: f64) -> Result<AversionFunction> {
        let family = match self.clone() {
            AversionSpec::Exponential { gamma } => AversionFamily::Exponential { gamma },
            AversionSpec::PowerConvex { gamma } => AversionFamily::PowerConvex { gamma },
            AversionSpec::PowerConcave { gamma } => AversionFamily::PowerConcave { gamma },
            AversionSpec::Flat => AversionFamily::Flat,
            AversionSpec::Step { levels, weights } => AversionFamily::Step { levels, weights },
        };
        AversionFunction::new(beta, family)
    }
}
