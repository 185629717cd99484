//! Normalization functions `S`: monotone maps from tail thickness to the
//! CVaR weight in `[0, 1]`.
//!
//! `S` is defined on the whole real line. The piecewise-linear family uses
//! fixed thresholds `a < b` that do not depend on the distribution being
//! measured, so weights are comparable across windows.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone)]
pub enum NormalizationFunction {
    /// `clamp((u - a) / (b - a), 0, 1)`.
    PiecewiseLinear { a: f64, b: f64 },
    /// `S ≡ c`.
    Constant(f64),
    /// Caller-supplied non-decreasing map. Values outside `[0, 1]` are
    /// reported as errors at evaluation time.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for NormalizationFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PiecewiseLinear { a, b } => f.debug_struct("PiecewiseLinear").field("a", a).field("b", b).finish(),
            Self::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl NormalizationFunction {
    pub fn piecewise_linear(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(invalid(
                "normalization",
                format!("thresholds need a < b, got a = {a}, b = {b}"),
            ));
        }
        Ok(Self::PiecewiseLinear { a, b })
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(invalid("normalization", format!("constant {c} outside [0, 1]")));
        }
        Ok(Self::Constant(c))
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(f))
    }

    /// `S(u)`.
    pub fn apply(&self, u: f64) -> Result<f64> {
        match self {
            Self::PiecewiseLinear { a, b } => Ok(((u - a) / (b - a)).clamp(0.0, 1.0)),
            Self::Constant(c) => Ok(*c),
            Self::Custom(f) => {
                let s = f(u);
                if (0.0..=1.0).contains(&s) {
                    Ok(s)
                } else {
                    Err(Error::Domain(format!(
                        "normalization returned {s} at {u}, outside [0, 1]"
                    )))
                }
            }
        }
    }

    /// Whether `S(u) = 1`, i.e. `u` lies in the set that defines the
    /// risk-tail region.
    pub fn saturates(&self, u: f64) -> Result<bool> {
        match self {
            Self::PiecewiseLinear { b, .. } => Ok(u >= *b),
            Self::Constant(c) => Ok(*c == 1.0),
            Self::Custom(_) => Err(Error::Unsupported(
                "custom normalization has no computable {S = 1} set".into(),
            )),
        }
    }
}

/// Serializable description of a normalization function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NormalizationSpec {
    PiecewiseLinear { a: f64, b: f64 },
    Constant { value: f64 },
}

impl NormalizationSpec {
    pub fn build(&self) -> Result<NormalizationFunction> {
        match *self {
            NormalizationSpec::PiecewiseLinear { a, b } => NormalizationFunction::piecewise_linear(a, b),
            NormalizationSpec::Constant { value } => NormalizationFunction::constant(value),
        }
    }
}
