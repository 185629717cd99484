//! Classical risk measures on empirical loss distributions: VaR, CVaR,
//! spectral and distortion measures, GlueVaR and ΛVaR.
//!
//! All integrals are evaluated exactly over the steps of the empirical
//! quantile function; no quadrature is involved for the built-in spectra.

use serde::{Deserialize, Serialize};

use crate::aversion::AversionFunction;
use crate::empirical::{check_level, ConstantWeight, EmpiricalDistribution};
use crate::error::{invalid, Admissibility, Error, Result};

/// Value at risk: `inf{x : P[X <= x] > α}`.
pub fn var(d: &EmpiricalDistribution, alpha: f64) -> Result<f64> {
    check_level(alpha, "VaR level")?;
    d.quantile(alpha)
}

/// Conditional value at risk: `(1/(1-α)) ∫_α^1 F⁻¹(p) dp`.
pub fn cvar(d: &EmpiricalDistribution, alpha: f64) -> Result<f64> {
    check_level(alpha, "CVaR level")?;
    let v = d.quantile(alpha)?;
    let excess = d.integrate_quantile_excess(&ConstantWeight(1.0), alpha, 1.0, v)?;
    Ok(v + excess / (1.0 - alpha))
}

/// Spectral measure `∫₀¹ F⁻¹(p) φ(p) dp` for an admissible `φ`.
pub fn spectral(d: &EmpiricalDistribution, phi: &AversionFunction) -> Result<f64> {
    // φ vanishes below β, so integrate the excess over the β-quantile.
    let beta = phi.beta();
    let floor = d.quantile(beta)?;
    let excess = d.integrate_quantile_excess(phi, beta, 1.0, floor)?;
    if !excess.is_finite() {
        return Err(Error::Admissibility(Admissibility::Quadrature { lo: beta, hi: 1.0 }));
    }
    Ok(floor + excess)
}

/// Piecewise-linear distortion `g : [0,1] → [0,1]`, non-decreasing with
/// `g(0) = 0` and `g(1) = 1`.
///
/// Knots are `(u, g(u))` pairs with non-decreasing `u`. A repeated `u` encodes
/// a jump; `g` is left-continuous there except at `u = 0`, where `g(0)` is the
/// first knot value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionFunction {
    knots: Vec<(f64, f64)>,
}

impl DistortionFunction {
    pub fn from_knots(knots: Vec<(f64, f64)>) -> Result<Self> {
        const WHAT: &str = "distortion function";
        if knots.len() < 2 {
            return Err(invalid(WHAT, "needs at least two knots"));
        }
        let (u0, g0) = knots[0];
        let (un, gn) = knots[knots.len() - 1];
        if u0 != 0.0 || un != 1.0 {
            return Err(invalid(WHAT, format!("knots must span [0, 1], got [{u0}, {un}]")));
        }
        if g0 != 0.0 || gn != 1.0 {
            return Err(invalid(
                WHAT,
                format!("endpoints must be g(0) = 0, g(1) = 1, got {g0}, {gn}"),
            ));
        }
        for w in knots.windows(2) {
            let ((ua, ga), (ub, gb)) = (w[0], w[1]);
            if !(ub >= ua) {
                return Err(invalid(WHAT, format!("knot abscissae not sorted at {ua} > {ub}")));
            }
            if !(gb >= ga) {
                return Err(invalid(WHAT, format!("values decrease from {ga} to {gb}")));
            }
        }
        Ok(Self { knots })
    }

    /// `g(u) = u`.
    pub fn identity() -> Self {
        Self {
            knots: vec![(0.0, 0.0), (1.0, 1.0)],
        }
    }

    /// `g(u) = min(u / (1-α), 1)`, the CVaR distortion.
    pub fn cvar(alpha: f64) -> Result<Self> {
        check_level(alpha, "distortion level")?;
        Self::from_knots(vec![(0.0, 0.0), (1.0 - alpha, 1.0), (1.0, 1.0)])
    }

    /// `g(u) = 𝟙{u > 0}`.
    pub fn worst_case() -> Self {
        Self {
            knots: vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
        }
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn eval(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return self.knots[0].1;
        }
        for w in self.knots.windows(2) {
            let ((ua, ga), (ub, gb)) = (w[0], w[1]);
            if ua < u && u <= ub {
                return ga + (gb - ga) * (u - ua) / (ub - ua);
            }
        }
        1.0
    }
}

/// Distortion measure as a Choquet sum over order statistics:
/// `Σᵢ x_(i) [g((n-i+1)/n) - g((n-i)/n)]`.
pub fn distortion(d: &EmpiricalDistribution, g: &DistortionFunction) -> f64 {
    let n = d.len();
    let x = d.scenarios();
    let base = x[0];
    let mut total = 0.0;
    for (i, xi) in x.iter().enumerate().skip(1) {
        // 0-based i is order statistic i+1: survival levels (n-i)/n and (n-i-1)/n
        let upper = g.eval((n - i) as f64 / n as f64);
        let lower = g.eval((n - i - 1) as f64 / n as f64);
        total += (xi - base) * (upper - lower);
    }
    base + total
}

/// GlueVaR weights `(ω₁, ω₂, ω₃)`: non-negative, summing to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct GlueVaRWeights([f64; 3]);

impl GlueVaRWeights {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Result<Self> {
        let w = [w1, w2, w3];
        if w.iter().any(|x| !(*x >= 0.0)) {
            return Err(invalid("GlueVaR weights", format!("negative or NaN weight in {w:?}")));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(invalid("GlueVaR weights", format!("weights sum to {sum}, expected 1")));
        }
        Ok(Self(w))
    }

    pub fn equal() -> Self {
        Self([1.0 / 3.0; 3])
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }
}

impl Default for GlueVaRWeights {
    fn default() -> Self {
        Self::equal()
    }
}

impl TryFrom<[f64; 3]> for GlueVaRWeights {
    type Error = Error;

    fn try_from(w: [f64; 3]) -> Result<Self> {
        Self::new(w[0], w[1], w[2])
    }
}

impl From<GlueVaRWeights> for [f64; 3] {
    fn from(w: GlueVaRWeights) -> Self {
        w.0
    }
}

/// `ω₁ VaR_β + ω₂ CVaR_β + ω₃ CVaR_α` with `β <= α`.
pub fn gluevar(d: &EmpiricalDistribution, beta: f64, alpha: f64, w: &GlueVaRWeights) -> Result<f64> {
    if beta > alpha {
        return Err(Error::Domain(format!(
            "GlueVaR needs beta <= alpha, got {beta} > {alpha}"
        )));
    }
    let [w1, w2, w3] = w.0;
    Ok(w1 * var(d, beta)? + w2 * cvar(d, beta)? + w3 * cvar(d, alpha)?)
}

/// Non-decreasing, right-continuous confidence-level function for ΛVaR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LambdaFunction {
    /// `base` below the first jump; after the jump at `x` the level is the
    /// paired value.
    Step { base: f64, jumps: Vec<(f64, f64)> },
    /// Linear interpolation between knots, flat outside them.
    Linear { knots: Vec<(f64, f64)> },
}

impl LambdaFunction {
    pub fn constant(level: f64) -> Result<Self> {
        Self::step(level, Vec::new())
    }

    pub fn step(base: f64, jumps: Vec<(f64, f64)>) -> Result<Self> {
        let f = LambdaFunction::Step { base, jumps };
        f.validate()?;
        Ok(f)
    }

    pub fn linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(invalid("lambda function", "needs at least one knot"));
        }
        let f = LambdaFunction::Linear { knots };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let (levels, xs): (Vec<f64>, Vec<f64>) = match self {
            LambdaFunction::Step { base, jumps } => (
                std::iter::once(*base).chain(jumps.iter().map(|j| j.1)).collect(),
                jumps.iter().map(|j| j.0).collect(),
            ),
            LambdaFunction::Linear { knots } => {
                (knots.iter().map(|k| k.1).collect(), knots.iter().map(|k| k.0).collect())
            }
        };
        if let Some(l) = levels.iter().find(|l| !(**l > 0.0 && **l < 1.0)) {
            return Err(invalid("lambda function", format!("level {l} outside (0, 1)")));
        }
        if levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(invalid("lambda function", "levels must be non-decreasing"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("lambda function", "knot positions must be strictly increasing"));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            LambdaFunction::Step { base, jumps } => jumps
                .iter()
                .take_while(|(at, _)| *at <= x)
                .last()
                .map_or(*base, |(_, level)| *level),
            LambdaFunction::Linear { knots } => {
                let (x0, l0) = knots[0];
                if x <= x0 {
                    return l0;
                }
                for w in knots.windows(2) {
                    let ((xa, la), (xb, lb)) = (w[0], w[1]);
                    if x < xb {
                        return la + (lb - la) * (x - xa) / (xb - xa);
                    }
                }
                knots[knots.len() - 1].1
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaVaR {
    pub value: f64,
    /// No order statistic below the maximum crosses `Λ`: the crossing only
    /// happens where the empirical CDF jumps to one, so the sample cannot
    /// resolve the level and `value` is the sample maximum.
    pub saturated: bool,
}

/// `inf{x : P[X <= x] > Λ(x)}`, scanned over order statistics.
pub fn lambda_var(d: &EmpiricalDistribution, lambda: &LambdaFunction) -> LambdaVaR {
    let n = d.len();
    let x = d.scenarios();
    match (1..n).find(|&k| k as f64 / n as f64 > lambda.eval(x[k - 1])) {
        Some(k) => LambdaVaR {
            value: x[k - 1],
            saturated: false,
        },
        None => LambdaVaR {
            value: d.max(),
            saturated: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_to(n: usize) -> EmpiricalDistribution {
        EmpiricalDistribution::new((1..=n).map(|k| k as f64).collect()).unwrap()
    }

    fn constant(c: f64) -> EmpiricalDistribution {
        EmpiricalDistribution::new(vec![c; 37]).unwrap()
    }

    #[test]
    fn var_examples() {
        let d = one_to(100);
        assert_eq!(var(&d, 0.95).unwrap(), 96.0);
        assert_eq!(var(&d, 0.99).unwrap(), 100.0);
        assert_eq!(var(&constant(-2.5), 0.9).unwrap(), -2.5);
        assert!(matches!(var(&d, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn cvar_examples() {
        let d = one_to(100);
        assert!((cvar(&d, 0.95).unwrap() - 98.0).abs() < 1e-12);
        assert!((cvar(&d, 0.0).unwrap() - 50.5).abs() < 1e-12);
        for a in [0.0, 0.5, 0.97, 0.999] {
            assert_eq!(cvar(&constant(7.25), a).unwrap(), 7.25);
        }
        assert!(cvar(&d, -0.01).is_err());
    }

    #[test]
    fn spectral_examples() {
        let d = one_to(100);
        let uniform = AversionFunction::flat(0.0).unwrap();
        assert!((spectral(&d, &uniform).unwrap() - d.mean()).abs() < 1e-12);
        let tail = AversionFunction::flat(0.95).unwrap();
        assert!((spectral(&d, &tail).unwrap() - cvar(&d, 0.95).unwrap()).abs() < 1e-12);
        let expo = AversionFunction::exponential(0.9, 0.2).unwrap();
        assert_eq!(spectral(&constant(3.0), &expo).unwrap(), 3.0);
    }

    #[test]
    fn distortion_examples() {
        let d = one_to(100);
        assert!((distortion(&d, &DistortionFunction::identity()) - 50.5).abs() < 1e-12);
        let g = DistortionFunction::cvar(0.95).unwrap();
        assert!((distortion(&d, &g) - 98.0).abs() < 1e-12);
        assert_eq!(distortion(&d, &DistortionFunction::worst_case()), 100.0);
        assert_eq!(distortion(&constant(4.0), &g), 4.0);
    }

    #[test]
    fn distortion_validation() {
        assert!(DistortionFunction::from_knots(vec![(0.0, 0.0)]).is_err());
        assert!(DistortionFunction::from_knots(vec![(0.0, 0.0), (0.5, 0.7), (1.0, 0.6)]).is_err());
        assert!(DistortionFunction::from_knots(vec![(0.0, 0.1), (1.0, 1.0)]).is_err());
        assert!(DistortionFunction::from_knots(vec![(0.0, 0.0), (0.6, 0.5), (0.4, 0.7), (1.0, 1.0)]).is_err());
    }

    #[test]
    fn gluevar_examples() {
        let d = one_to(100);
        let g = gluevar(&d, 0.95, 0.99, &GlueVaRWeights::equal()).unwrap();
        assert!((g - 98.0).abs() < 1e-12, "{g}");
        let w = GlueVaRWeights::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(gluevar(&d, 0.95, 0.99, &w).unwrap(), 96.0);
        let w = GlueVaRWeights::new(0.0, 0.0, 1.0).unwrap();
        assert!((gluevar(&d, 0.95, 0.99, &w).unwrap() - cvar(&d, 0.99).unwrap()).abs() < 1e-12);
        assert!(gluevar(&d, 0.99, 0.95, &w).is_err());
    }

    #[test]
    fn gluevar_weight_validation() {
        assert!(GlueVaRWeights::new(0.5, 0.6, -0.1).is_err());
        assert!(GlueVaRWeights::new(0.5, 0.5, 0.5).is_err());
        assert!(GlueVaRWeights::new(0.2, 0.3, 0.5).is_ok());
    }

    #[test]
    fn lambda_var_examples() {
        let d = one_to(100);
        let c = LambdaFunction::constant(0.95).unwrap();
        assert_eq!(lambda_var(&d, &c).value, var(&d, 0.95).unwrap());
        let two = LambdaFunction::step(0.90, vec![(95.0, 0.99)]).unwrap();
        assert_eq!(
            lambda_var(&d, &two),
            LambdaVaR {
                value: 91.0,
                saturated: false
            }
        );
        let high = LambdaFunction::constant(0.999).unwrap();
        assert_eq!(
            lambda_var(&d, &high),
            LambdaVaR {
                value: 100.0,
                saturated: true
            }
        );
    }

    #[test]
    fn lambda_linear_eval_and_validation() {
        let l = LambdaFunction::linear(vec![(0.0, 0.9), (10.0, 0.99)]).unwrap();
        assert_eq!(l.eval(-1.0), 0.9);
        assert!((l.eval(5.0) - 0.945).abs() < 1e-15);
        assert_eq!(l.eval(20.0), 0.99);
        assert!(LambdaFunction::linear(vec![(0.0, 0.9), (10.0, 0.8)]).is_err());
        assert!(LambdaFunction::constant(1.0).is_err());
        assert!(LambdaFunction::step(0.9, vec![(3.0, 0.95), (3.0, 0.96)]).is_err());
    }
}
