//! Empirical loss distributions.
//!
//! An [`EmpiricalDistribution`] holds `n` sorted loss scenarios and exposes the
//! step quantile function `F⁻¹(p) = x_(k)` for `(k-1)/n <= p < k/n`. Every
//! measure in the crate is built from two primitives here: the point query
//! [`EmpiricalDistribution::quantile`] and the exact piecewise integral
//! [`EmpiricalDistribution::integrate_quantile`].
//!
//! Losses carry their natural sign: positive values are losses, negative
//! values are gains. Nothing in this module assumes a sign.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Sorted loss scenarios with equal probability mass `1/n` each.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    scenarios: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Builds a distribution from unsorted scenarios. Ties are kept as
    /// repeated order statistics.
    pub fn new(mut scenarios: Vec<f64>) -> Result<Self> {
        if scenarios.is_empty() {
            return Err(Error::Input(
                "empirical distribution needs at least one scenario".into(),
            ));
        }
        if let Some(bad) = scenarios.iter().find(|x| !x.is_finite()) {
            return Err(Error::Input(format!("non-finite scenario value {bad}")));
        }
        scenarios.sort_by(f64::total_cmp);
        Ok(Self { scenarios })
    }

    pub fn from_slice(scenarios: &[f64]) -> Result<Self> {
        Self::new(scenarios.to_vec())
    }

    /// Order statistics `x_(1) <= ... <= x_(n)`.
    pub fn scenarios(&self) -> &[f64] {
        &self.scenarios
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.scenarios[0]
    }

    pub fn max(&self) -> f64 {
        self.scenarios[self.scenarios.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.scenarios.iter().sum::<f64>() / self.len() as f64
    }

    /// Right endpoint `k/n` of the k-th quantile step (1-based `k`).
    #[inline]
    fn step_end(&self, k: usize) -> f64 {
        k as f64 / self.len() as f64
    }

    /// Smallest 1-based `k` with `k/n > p`, for `p < 1`.
    ///
    /// `floor(n p) + 1` is the starting guess; the two correction loops make
    /// the result agree with the comparison `k/n > p` as evaluated in floating
    /// point, so that decimal levels such as `0.29` behave as written.
    pub(crate) fn step_index(&self, p: f64) -> usize {
        let n = self.len();
        let mut k = ((n as f64 * p).floor() as usize + 1).clamp(1, n);
        while k > 1 && self.step_end(k - 1) > p {
            k -= 1;
        }
        while k < n && self.step_end(k) <= p {
            k += 1;
        }
        k
    }

    /// Lower quantile `inf{x : P[X <= x] > p}`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        check_level(p, "quantile level")?;
        Ok(self.scenarios[self.step_index(p) - 1])
    }

    /// Exact integral `∫_lo^hi F⁻¹(p) w(p) dp`, summed step by step.
    pub fn integrate_quantile<W: QuantileWeight + ?Sized>(&self, w: &W, lo: f64, hi: f64) -> Result<f64> {
        self.integrate_quantile_excess(w, lo, hi, 0.0)
    }

    /// `∫_lo^hi (F⁻¹(p) - center) w(p) dp`.
    ///
    /// Measures centre the integrand on a quantile they already know so that
    /// constant distributions come out exact and bounds such as
    /// `CVaR >= VaR` hold without rounding slack.
    pub(crate) fn integrate_quantile_excess<W: QuantileWeight + ?Sized>(
        &self,
        w: &W,
        lo: f64,
        hi: f64,
        center: f64,
    ) -> Result<f64> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
            return Err(Error::Domain(format!("integration bounds [{lo}, {hi}] outside [0, 1]")));
        }
        if lo > hi {
            return Err(Error::Domain(format!("integration bounds inverted: {lo} > {hi}")));
        }
        if lo == hi || lo == 1.0 {
            return Ok(0.0);
        }
        let n = self.len();
        let mut total = 0.0;
        let mut k = self.step_index(lo);
        while k <= n {
            let start = self.step_end(k - 1).max(lo);
            if start >= hi {
                break;
            }
            let end = self.step_end(k).min(hi);
            if end > start {
                total += (self.scenarios[k - 1] - center) * w.mass(start, end);
            }
            k += 1;
        }
        Ok(total)
    }

    /// Equal-width histogram over `[min, max]`, for plotting.
    pub fn histogram(&self, bins: usize) -> Vec<HistogramBin> {
        let bins = bins.max(1);
        let (mut lo, mut hi) = (self.min(), self.max());
        if hi <= lo {
            lo -= 0.5;
            hi += 0.5;
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        for &x in &self.scenarios {
            let idx = (((x - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        let n = self.len() as f64;
        counts
            .into_iter()
            .enumerate()
            .map(|(i, count)| HistogramBin {
                lo: lo + i as f64 * width,
                hi: lo + (i + 1) as f64 * width,
                count,
                density: count as f64 / (n * width),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub density: f64,
}

pub(crate) fn check_level(p: f64, what: &str) -> Result<()> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} {p} outside [0, 1)")))
    }
}

/// A weight density on `[0, 1]` that can report its exact mass over an
/// interval, usually as `W(hi) - W(lo)` for an antiderivative `W`.
pub trait QuantileWeight {
    fn mass(&self, lo: f64, hi: f64) -> f64;
}

/// Constant density `c` on the whole unit interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantWeight(pub f64);

impl QuantileWeight for ConstantWeight {
    fn mass(&self, lo: f64, hi: f64) -> f64 {
        self.0 * (hi - lo)
    }
}

/// Weight described by a closed-form antiderivative.
#[derive(Debug, Clone, Copy)]
pub struct Antiderivative<F>(pub F);

impl<F: Fn(f64) -> f64> QuantileWeight for Antiderivative<F> {
    fn mass(&self, lo: f64, hi: f64) -> f64 {
        (self.0)(hi) - (self.0)(lo)
    }
}

/// Aligned loss scenarios for several positions: index `i` in every position
/// is the same state of the world.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSet {
    positions: Vec<Vec<f64>>,
}

/// Scenario-wise operation applied by [`ScenarioSet::combine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Combine {
    Sum,
    Scale(f64),
    Shift(f64),
}

impl ScenarioSet {
    pub fn new(positions: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = positions.first() else {
            return Err(Error::Input("scenario set needs at least one position".into()));
        };
        let expected = first.len();
        if expected == 0 {
            return Err(Error::Input("positions need at least one scenario".into()));
        }
        for (position, p) in positions.iter().enumerate() {
            if p.len() != expected {
                return Err(Error::Alignment {
                    position,
                    expected,
                    found: p.len(),
                });
            }
        }
        Ok(Self { positions })
    }

    pub fn single(scenarios: Vec<f64>) -> Result<Self> {
        Self::new(vec![scenarios])
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }

    pub fn scenario_count(&self) -> usize {
        self.positions[0].len()
    }

    /// Scenario-wise total over all positions.
    pub fn total(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.scenario_count()];
        for p in &self.positions {
            for (o, x) in out.iter_mut().zip(p) {
                *o += x;
            }
        }
        out
    }

    /// Applies `op` and keeps the result aligned: `Sum` collapses to one
    /// position, `Scale` and `Shift` act on every position.
    pub fn apply(&self, op: Combine) -> ScenarioSet {
        let positions = match op {
            Combine::Sum => vec![self.total()],
            Combine::Scale(l) => self.map(|x| l * x),
            Combine::Shift(a) => self.map(|x| x + a),
        };
        ScenarioSet { positions }
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Vec<Vec<f64>> {
        self.positions
            .iter()
            .map(|p| p.iter().map(|&x| f(x)).collect())
            .collect()
    }

    /// Scenario-wise arithmetic on the aggregate position, then sorting.
    pub fn combine(&self, op: Combine) -> Result<EmpiricalDistribution> {
        let total = self.total();
        let values = match op {
            Combine::Sum => total,
            Combine::Scale(l) => total.into_iter().map(|x| l * x).collect(),
            Combine::Shift(a) => total.into_iter().map(|x| x + a).collect(),
        };
        EmpiricalDistribution::new(values)
    }

    /// Scenario-wise `Σ wᵢ Xᵢ`.
    pub fn linear_combination(&self, weights: &[f64]) -> Result<EmpiricalDistribution> {
        if weights.len() != self.positions.len() {
            return Err(invalid(
                "linear combination",
                format!("{} weights for {} positions", weights.len(), self.positions.len()),
            ));
        }
        let mut out = vec![0.0; self.scenario_count()];
        for (p, w) in self.positions.iter().zip(weights) {
            for (o, x) in out.iter_mut().zip(p) {
                *o += w * x;
            }
        }
        EmpiricalDistribution::new(out)
    }

    /// Distribution of a single position.
    pub fn marginal(&self, position: usize) -> Result<EmpiricalDistribution> {
        let p = self
            .positions
            .get(position)
            .ok_or_else(|| invalid("position", format!("index {position} out of range")))?;
        EmpiricalDistribution::from_slice(p)
    }
}

/// Probability of drawing from the first mixture component.
pub const FIRST_COMPONENT_WEIGHT: f64 = 1.0 / 3.0;

/// Two-component Gaussian mixture `⅓·N(μ₁, σ₁²) + ⅔·N(μ₂, σ₂²)` with a fixed
/// sample count and seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixtureSpec {
    pub mu1: f64,
    pub sigma1: f64,
    pub mu2: f64,
    pub sigma2: f64,
    pub samples: usize,
    pub seed: u64,
}

impl GaussianMixtureSpec {
    pub fn mixture(&self) -> Result<GaussianMixture> {
        GaussianMixture::new(self.mu1, self.sigma1, self.mu2, self.sigma2)
    }
}

/// Sampler for the two-component mixture; the caller owns the RNG.
#[derive(Debug, Clone, Copy)]
pub struct GaussianMixture {
    first: Normal<f64>,
    second: Normal<f64>,
}

impl GaussianMixture {
    pub fn new(mu1: f64, sigma1: f64, mu2: f64, sigma2: f64) -> Result<Self> {
        for (name, s) in [("sigma1", sigma1), ("sigma2", sigma2)] {
            if !(s > 0.0 && s.is_finite()) {
                return Err(invalid("gaussian mixture", format!("{name} must be positive, got {s}")));
            }
        }
        for (name, m) in [("mu1", mu1), ("mu2", mu2)] {
            if !m.is_finite() {
                return Err(invalid("gaussian mixture", format!("{name} must be finite, got {m}")));
            }
        }
        let normal = |m, s| Normal::new(m, s).map_err(|e| invalid("gaussian mixture", e.to_string()));
        Ok(Self {
            first: normal(mu1, sigma1)?,
            second: normal(mu2, sigma2)?,
        })
    }

    /// Single-component special case.
    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(mu, sigma, mu, sigma)
    }

    pub fn mean(&self) -> f64 {
        FIRST_COMPONENT_WEIGHT * self.first.mean() + (1.0 - FIRST_COMPONENT_WEIGHT) * self.second.mean()
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if rng.random::<f64>() < FIRST_COMPONENT_WEIGHT {
            self.first.sample(rng)
        } else {
            self.second.sample(rng)
        }
    }

    pub fn draw_n<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.draw(rng)).collect()
    }
}

/// Deterministic RNG used throughout the crate for seeded runs.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws `spec.samples` losses from the mixture with `spec.seed`.
pub fn sample_mixture(spec: &GaussianMixtureSpec) -> Result<EmpiricalDistribution> {
    let mixture = spec.mixture()?;
    if spec.samples == 0 {
        return Err(invalid("gaussian mixture", "sample count must be positive"));
    }
    let mut rng = seeded_rng(spec.seed);
    EmpiricalDistribution::new(mixture.draw_n(&mut rng, spec.samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_to(n: usize) -> EmpiricalDistribution {
        EmpiricalDistribution::new((1..=n).map(|k| k as f64).collect()).unwrap()
    }

    #[test]
    fn quantile_examples() {
        let d = one_to(100);
        assert_eq!(d.quantile(0.95).unwrap(), 96.0);
        assert_eq!(d.quantile(0.0).unwrap(), 1.0);
        assert_eq!(d.quantile(0.99).unwrap(), 100.0);
        let c = EmpiricalDistribution::new(vec![3.5; 17]).unwrap();
        for p in [0.0, 0.3, 0.999] {
            assert_eq!(c.quantile(p).unwrap(), 3.5);
        }
    }

    #[test]
    fn quantile_rejects_levels_outside_unit_interval() {
        let d = one_to(10);
        assert!(matches!(d.quantile(1.0), Err(Error::Domain(_))));
        assert!(matches!(d.quantile(-0.1), Err(Error::Domain(_))));
        assert!(d.quantile(f64::NAN).is_err());
    }

    #[test]
    fn quantile_follows_decimal_levels() {
        // 0.29 * 100 rounds below 29 in binary; the step must still be 30.
        let d = one_to(100);
        assert_eq!(d.quantile(0.29).unwrap(), 30.0);
        assert_eq!(d.quantile(0.07).unwrap(), 8.0);
    }

    #[test]
    fn construction_rejects_empty_and_nan() {
        assert!(EmpiricalDistribution::new(vec![]).is_err());
        assert!(EmpiricalDistribution::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn ties_are_kept() {
        let d = EmpiricalDistribution::new(vec![2.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(d.scenarios(), &[1.0, 2.0, 2.0, 2.0]);
        assert_eq!(d.quantile(0.25).unwrap(), 2.0);
    }

    #[test]
    fn integrate_quantile_examples() {
        let d = one_to(100);
        let mean = d.integrate_quantile(&ConstantWeight(1.0), 0.0, 1.0).unwrap();
        assert!((mean - 50.5).abs() < 1e-12);
        let tail = d.integrate_quantile(&ConstantWeight(20.0), 0.95, 1.0).unwrap();
        assert!((tail - 98.0).abs() < 1e-12, "{tail}");
        assert_eq!(d.integrate_quantile(&ConstantWeight(1.0), 0.4, 0.4).unwrap(), 0.0);
        assert!(matches!(
            d.integrate_quantile(&ConstantWeight(1.0), 0.6, 0.4),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn integrate_quantile_with_antiderivative() {
        // w(p) = 2p, W(p) = p²; ∫ F⁻¹ 2p dp on {1, 2} = 1·(1/4) + 2·(3/4)
        let d = EmpiricalDistribution::new(vec![2.0, 1.0]).unwrap();
        let v = d.integrate_quantile(&Antiderivative(|p: f64| p * p), 0.0, 1.0).unwrap();
        assert!((v - 1.75).abs() < 1e-15);
    }

    #[test]
    fn combine_examples() {
        let s = ScenarioSet::new(vec![vec![1.0, 2.0, 3.0], vec![3.0, 2.0, 1.0]]).unwrap();
        assert_eq!(s.combine(Combine::Sum).unwrap().scenarios(), &[4.0, 4.0, 4.0]);
        let x = ScenarioSet::single(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(x.combine(Combine::Shift(2.0)).unwrap().scenarios(), &[3.0, 4.0, 5.0]);
        assert_eq!(x.combine(Combine::Scale(0.0)).unwrap().scenarios(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn combine_rejects_misaligned_positions() {
        let err = ScenarioSet::new(vec![vec![1.0, 2.0], vec![1.0]]).unwrap_err();
        assert_eq!(
            err,
            Error::Alignment {
                position: 1,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn mixture_is_deterministic_and_validated() {
        let spec = GaussianMixtureSpec {
            mu1: 30.0,
            sigma1: 10.0,
            mu2: 0.0,
            sigma2: 5.0,
            samples: 1000,
            seed: 7,
        };
        assert_eq!(sample_mixture(&spec).unwrap(), sample_mixture(&spec).unwrap());
        let bad = GaussianMixtureSpec { sigma1: 0.0, ..spec };
        assert!(matches!(sample_mixture(&bad), Err(Error::Validation { .. })));
    }

    #[test]
    fn near_degenerate_mixture_is_a_point_mass() {
        let spec = GaussianMixtureSpec {
            mu1: 0.0,
            sigma1: 1e-12,
            mu2: 0.0,
            sigma2: 1e-12,
            samples: 500,
            seed: 1,
        };
        let d = sample_mixture(&spec).unwrap();
        assert!(d.min().abs() < 1e-9 && d.max().abs() < 1e-9);
    }

    #[test]
    fn histogram_counts_everything() {
        let d = one_to(100);
        let h = d.histogram(7);
        assert_eq!(h.iter().map(|b| b.count).sum::<usize>(), 100);
        let area: f64 = h.iter().map(|b| b.density * (b.hi - b.lo)).sum();
        assert!((area - 1.0).abs() < 1e-12);
        let c = EmpiricalDistribution::new(vec![4.0; 3]).unwrap();
        assert_eq!(c.histogram(3).iter().map(|b| b.count).sum::<usize>(), 3);
    }
}
