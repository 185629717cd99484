//! SlideVaR: a blend of `CVaR_α` and `VaR_β` whose CVaR weight `S(U)` follows
//! the tail thickness `U` of the loss distribution.
//!
//! ```text
//! U        = ∫₀¹ F⁻¹(p) φ_β(p) dp
//! SlideVaR = S(U)·CVaR_α + (1 - S(U))·VaR_β
//! ```
//!
//! With `S(U) = 0` the measure is `VaR_β`, with `S(U) = 1` it is `CVaR_α`.
//! Distributions with `S(U) = 1` form the risk-tail region, on which the
//! measure is sub-additive and convex.

use serde::{Deserialize, Serialize};

use crate::aversion::{AversionFunction, AversionSpec};
use crate::empirical::EmpiricalDistribution;
use crate::error::{invalid, Error, Result};
use crate::measures::{cvar, spectral, var};
use crate::normalization::{NormalizationFunction, NormalizationSpec};

/// One SlideVaR instance: levels `β <= α < 1`, the aversion function `φ_β`
/// (which carries `β`) and the normalization `S`.
#[derive(Debug, Clone)]
pub struct SlideVaRConfig {
    alpha: f64,
    aversion: AversionFunction,
    normalization: NormalizationFunction,
}

impl SlideVaRConfig {
    pub fn new(alpha: f64, aversion: AversionFunction, normalization: NormalizationFunction) -> Result<Self> {
        let beta = aversion.beta();
        if !(beta <= alpha && alpha < 1.0) {
            return Err(invalid(
                "SlideVaR configuration",
                format!("levels need beta <= alpha < 1, got beta = {beta}, alpha = {alpha}"),
            ));
        }
        Ok(Self {
            alpha,
            aversion,
            normalization,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.aversion.beta()
    }

    pub fn aversion(&self) -> &AversionFunction {
        &self.aversion
    }

    pub fn normalization(&self) -> &NormalizationFunction {
        &self.normalization
    }

    /// Same levels and aversion with a different `S`.
    pub fn with_normalization(&self, normalization: NormalizationFunction) -> Self {
        Self {
            normalization,
            ..self.clone()
        }
    }
}

/// Serializable form of [`SlideVaRConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlideVaRSpec {
    pub alpha: f64,
    pub beta: f64,
    pub aversion: AversionSpec,
    pub normalization: NormalizationSpec,
}

impl SlideVaRSpec {
    pub fn build(&self) -> Result<SlideVaRConfig> {
        SlideVaRConfig::new(self.alpha, self.aversion.build(self.beta)?, self.normalization.build()?)
    }
}

/// Tail thickness `U_β^φ(X)`: the spectral measure of `φ_β`.
pub fn tail_thickness(d: &EmpiricalDistribution, phi: &AversionFunction) -> Result<f64> {
    spectral(d, phi)
}

/// `S(u)`.
pub fn normalize(s: &NormalizationFunction, u: f64) -> Result<f64> {
    s.apply(u)
}

/// Every intermediate quantity of one SlideVaR evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlideVaR {
    pub var_beta: f64,
    pub cvar_alpha: f64,
    pub tail_thickness: f64,
    /// `S(U)`, the weight on `CVaR_α`.
    pub weight: f64,
    pub value: f64,
}

impl SlideVaR {
    pub fn evaluate(d: &EmpiricalDistribution, cfg: &SlideVaRConfig) -> Result<Self> {
        let var_beta = var(d, cfg.beta())?;
        let cvar_alpha = cvar(d, cfg.alpha)?;
        let tail_thickness = tail_thickness(d, &cfg.aversion)?;
        let weight = normalize(&cfg.normalization, tail_thickness)?;
        let value = if weight == 1.0 {
            cvar_alpha
        } else if weight == 0.0 {
            var_beta
        } else {
            // the blend lies in [VaR_β, CVaR_α]; min/max only absorb rounding
            (var_beta + weight * (cvar_alpha - var_beta))
                .min(cvar_alpha)
                .max(var_beta)
        };
        Ok(Self {
            var_beta,
            cvar_alpha,
            tail_thickness,
            weight,
            value,
        })
    }
}

/// `S(U)·CVaR_α + (1 - S(U))·VaR_β`.
pub fn slide_var(d: &EmpiricalDistribution, cfg: &SlideVaRConfig) -> Result<f64> {
    SlideVaR::evaluate(d, cfg).map(|s| s.value)
}

/// Whether `S(U) = 1`, i.e. `d` lies in the risk-tail region. For the
/// piecewise-linear `S` this is `U >= b`.
pub fn risk_tail_membership(d: &EmpiricalDistribution, cfg: &SlideVaRConfig) -> Result<bool> {
    if let NormalizationFunction::Custom(_) = cfg.normalization {
        return Err(Error::Unsupported(
            "custom normalization has no computable {S = 1} set".into(),
        ));
    }
    cfg.normalization.saturates(tail_thickness(d, &cfg.aversion)?)
}
