//! Randomized checks of the SlideVaR properties.
//!
//! Each property draws `cases` random instances from a seeded generator and
//! records the first counterexample as JSON. The same runner backs the
//! `check` subcommand and the acceptance tests.
//!
//! | id  | property |
//! |-----|----------|
//! | P1  | `VaR_β <= SlideVaR <= CVaR_α` |
//! | P2  | `X₁ >= X₂` pointwise ⇒ `SlideVaR(X₁) >= SlideVaR(X₂)` |
//! | P3  | `X₁ >= X₂` pointwise ⇒ `S(U(X₁)) >= S(U(X₂))` |
//! | P4  | `U(X + a) = U(X) + a`, so `S(U)` moves with the sign of `a` |
//! | P5  | `U(λX) = λU(X)`; for `λ >= 1` and `U >= 0`, `S(U(λX)) >= S(U(X))` |
//! | P6  | sub-additivity inside the risk-tail region |
//! | P7  | `SlideVaR(X + a) >= SlideVaR(X) + a` for `a >= 0`, `<=` for `a <= 0` |
//! | P8  | `SlideVaR(λX) >= λ SlideVaR(X)` for `λ >= 1`, `<=` for `λ <= 1`, given `U >= 0` |
//! | P9  | convexity inside the risk-tail region |
//! | P10 | the risk-tail region is closed upwards |
//! | P11 | unit norm of every built-in aversion family over a `(γ, β)` grid |
//! | P12 | `S ≡ 1` gives `CVaR_α`, `S ≡ 0` gives `VaR_β` |
//!
//! Comparisons allow `1e-9 · (1 + max|x|)` of floating-point slack, except
//! P11 (`1e-9` on the norm) and P12 (`1e-12`).

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::aversion::{AversionSpec, NORM_TOLERANCE};
use crate::empirical::{seeded_rng, Combine, EmpiricalDistribution, GaussianMixture, ScenarioSet};
use crate::measures::{cvar, var};
use crate::normalization::{NormalizationFunction, NormalizationSpec};
use crate::slide::{normalize, risk_tail_membership, slide_var, tail_thickness, SlideVaRConfig, SlideVaRSpec};

/// Relative slack for randomized inequality checks.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;
/// Slack for the degeneration property.
pub const DEGENERATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckConfig {
    pub seed: u64,
    pub cases: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 2019,
            cases: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// First failing instance, as JSON.
    pub counterexample: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Case = fn(&mut ChaCha8Rng) -> Result<(), serde_json::Value>;

const RANDOMIZED: [(&str, &str, Case); 11] = [
    ("P1", "bounds between VaR_beta and CVaR_alpha", p1_bounds),
    ("P2", "monotonicity of SlideVaR", p2_monotonicity),
    ("P3", "monotonicity of S(U)", p3_weight_monotonicity),
    ("P4", "translation of U and S(U)", p4_translation_of_u),
    ("P5", "scaling of U and S(U)", p5_scaling_of_u),
    ("P6", "risk-tail sub-additivity", p6_risk_tail_subadditivity),
    ("P7", "translation inequalities", p7_translation),
    ("P8", "scaling inequalities", p8_scaling),
    ("P9", "risk-tail convexity", p9_risk_tail_convexity),
    ("P10", "upward closure of the risk-tail region", p10_upward_closure),
    ("P12", "degeneration to CVaR_alpha and VaR_beta", p12_degeneration),
];

/// Identifiers accepted by [`run_property`].
pub const PROPERTY_IDS: [&str; 13] = [
    "P1",
    "P2",
    "P3",
    "P4",
    "P5",
    "P6",
    "P7",
    "P8",
    "P9",
    "P10",
    "P11",
    "P12",
    "VAR-SUBADD",
];

/// Runs every property in order P1 .. P12, then the VaR fixture check.
pub fn run_all(cfg: &CheckConfig) -> Vec<PropertyOutcome> {
    PROPERTY_IDS.iter().filter_map(|id| run_property(id, cfg)).collect()
}

pub fn run_property(id: &str, cfg: &CheckConfig) -> Option<PropertyOutcome> {
    match id {
        "P11" => Some(p11_family_norms()),
        "VAR-SUBADD" => Some(var_subadditivity_fixture()),
        _ => {
            let (slot, &(id, name, case)) = RANDOMIZED.iter().enumerate().find(|(_, p)| p.0 == id)?;
            Some(run_randomized(id, name, case, cfg, slot as u64))
        }
    }
}

fn run_randomized(id: &'static str, name: &'static str, case: Case, cfg: &CheckConfig, slot: u64) -> PropertyOutcome {
    let mut rng = seeded_rng(cfg.seed ^ (slot + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut failures = 0;
    let mut counterexample = None;
    for i in 0..cfg.cases {
        if let Err(mut detail) = case(&mut rng) {
            failures += 1;
            if counterexample.is_none() {
                detail["case"] = json!(i);
                detail["seed"] = json!(cfg.seed);
                counterexample = Some(detail.to_string());
            }
        }
    }
    PropertyOutcome {
        id,
        name,
        cases: cfg.cases,
        failures,
        counterexample,
    }
}

fn slack(values: &[&[f64]]) -> f64 {
    let scale = values
        .iter()
        .flat_map(|v| v.iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()));
    RELATIVE_TOLERANCE * (1.0 + scale)
}

/// Random aligned scenario vector of length `n` from one of several shapes:
/// normal, two-component mixture, small integers (ties), or a heavy right
/// tail.
pub fn random_scenarios(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    match rng.random_range(0..4) {
        0 => {
            let mu = rng.random_range(-5.0..5.0);
            let sigma = rng.random_range(0.1..10.0);
            let g = GaussianMixture::normal(mu, sigma).expect("positive sigma");
            g.draw_n(rng, n)
        }
        1 => {
            let g = GaussianMixture::new(
                rng.random_range(-10.0..30.0),
                rng.random_range(1.0..25.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(1.0..10.0),
            )
            .expect("positive sigmas");
            g.draw_n(rng, n)
        }
        2 => (0..n).map(|_| rng.random_range(-5..=5) as f64).collect(),
        _ => {
            let loc = rng.random_range(-3.0..3.0);
            let scale = rng.random_range(0.1..4.0);
            (0..n)
                .map(|_| {
                    let u: f64 = rng.random_range(f64::EPSILON..1.0);
                    loc + scale * (-u.ln()).powi(2)
                })
                .collect()
        }
    }
}

fn random_aversion(rng: &mut ChaCha8Rng, beta: f64) -> AversionSpec {
    let gamma = rng.random_range(0.05..0.95);
    match rng.random_range(0..5) {
        0 => AversionSpec::Exponential { gamma },
        1 => AversionSpec::PowerConvex { gamma },
        2 => AversionSpec::PowerConcave { gamma },
        3 => AversionSpec::Flat,
        _ => {
            let b1 = beta + (1.0 - beta) * rng.random_range(0.1..0.5);
            let b2 = b1 + (1.0 - b1) * rng.random_range(0.1..0.9);
            let w1 = rng.random_range(0.0..1.0);
            let w2 = rng.random_range(0.0..1.0 - w1);
            AversionSpec::Step {
                levels: [b1, b2],
                weights: [w1, w2, 1.0 - w1 - w2],
            }
        }
    }
}

/// Random configuration whose thresholds `a < b` fall inside the scenario
/// range of `hint`, so that all three regimes of `S` are exercised.
pub fn random_spec(rng: &mut ChaCha8Rng, hint: &[f64]) -> SlideVaRSpec {
    let beta = rng.random_range(0.80..0.99);
    let alpha = rng.random_range(beta..0.995);
    let lo = hint.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = hint.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = (hi - lo).max(1.0);
    let a = rng.random_range(lo..=lo + range);
    let b = a + range * rng.random_range(0.01..1.0);
    SlideVaRSpec {
        alpha,
        beta,
        aversion: random_aversion(rng, beta),
        normalization: NormalizationSpec::PiecewiseLinear { a, b },
    }
}

struct Instance {
    spec: SlideVaRSpec,
    cfg: SlideVaRConfig,
    x: Vec<f64>,
}

fn instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.random_range(10..=500);
    let x = random_scenarios(rng, n);
    let spec = random_spec(rng, &x);
    let cfg = spec.build().expect("generated specs are valid");
    Instance { spec, cfg, x }
}

fn dist(x: &[f64]) -> EmpiricalDistribution {
    EmpiricalDistribution::from_slice(x).expect("generated scenarios are finite and non-empty")
}

fn dominating(rng: &mut ChaCha8Rng, x: &[f64]) -> Vec<f64> {
    let bump = rng.random_range(0.0..5.0);
    x.iter()
        .map(|v| {
            if rng.random_bool(0.3) {
                *v
            } else {
                v + rng.random_range(0.0..=bump)
            }
        })
        .collect()
}

fn u_of(x: &[f64], cfg: &SlideVaRConfig) -> f64 {
    tail_thickness(&dist(x), cfg.aversion()).expect("admissible aversion")
}

fn sv(x: &[f64], cfg: &SlideVaRConfig) -> f64 {
    slide_var(&dist(x), cfg).expect("valid configuration")
}

fn weight(x: &[f64], cfg: &SlideVaRConfig) -> f64 {
    normalize(cfg.normalization(), u_of(x, cfg)).expect("piecewise-linear S")
}

fn upper_threshold(spec: &SlideVaRSpec) -> (f64, f64) {
    match spec.normalization {
        NormalizationSpec::PiecewiseLinear { a, b } => (a, b),
        NormalizationSpec::Constant { .. } => unreachable!("generator only builds piecewise-linear S"),
    }
}

/// Shifts `x` so that its tail thickness lands `margin` above `b`.
fn into_region(rng: &mut ChaCha8Rng, x: &[f64], spec: &SlideVaRSpec, cfg: &SlideVaRConfig) -> Vec<f64> {
    let (a, b) = upper_threshold(spec);
    let margin = (b - a) * rng.random_range(1e-3..0.5);
    let shift = b - u_of(x, cfg) + margin;
    x.iter().map(|v| v + shift).collect()
}

fn p1_bounds(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let d = dist(&x);
    let v = var(&d, cfg.beta()).unwrap();
    let c = cvar(&d, cfg.alpha()).unwrap();
    let s = slide_var(&d, &cfg).unwrap();
    let tol = slack(&[&x]);
    if v - tol <= s && s <= c + tol {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "var_beta": v, "slidevar": s, "cvar_alpha": c}))
    }
}

fn p2_monotonicity(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let y = dominating(rng, &x);
    let (sx, sy) = (sv(&x, &cfg), sv(&y, &cfg));
    if sy >= sx - slack(&[&x, &y]) {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x2": x, "x1": y, "slidevar_x2": sx, "slidevar_x1": sy}))
    }
}

fn p3_weight_monotonicity(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let y = dominating(rng, &x);
    let (wx, wy) = (weight(&x, &cfg), weight(&y, &cfg));
    if wy >= wx - slack(&[&x, &y]) {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x2": x, "x1": y, "s_x2": wx, "s_x1": wy}))
    }
}

fn p4_translation_of_u(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let a = rng.random_range(-20.0..20.0);
    let shifted = ScenarioSet::single(x.clone())
        .unwrap()
        .apply(Combine::Shift(a))
        .positions()[0]
        .clone();
    let (ux, ua) = (u_of(&x, &cfg), u_of(&shifted, &cfg));
    let (wx, wa) = (weight(&x, &cfg), weight(&shifted, &cfg));
    let tol = slack(&[&x, &shifted]);
    let exact = (ua - (ux + a)).abs() <= tol;
    let ordered = if a >= 0.0 { wa >= wx - tol } else { wa <= wx + tol };
    if exact && ordered {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "a": a, "u_x": ux, "u_x_plus_a": ua, "s_x": wx, "s_x_plus_a": wa}))
    }
}

fn p5_scaling_of_u(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, mut x } = instance(rng);
    // half the cases meet the sign precondition of the weight ordering
    if rng.random_bool(0.5) {
        let u = u_of(&x, &cfg);
        if u < 0.0 {
            x.iter_mut().for_each(|v| *v -= u);
        }
    }
    let lambda = rng.random_range(0.0..3.0);
    let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
    let (ux, ul) = (u_of(&x, &cfg), u_of(&scaled, &cfg));
    let tol = slack(&[&x, &scaled]);
    let homogeneous = (ul - lambda * ux).abs() <= tol;
    let ordered = if lambda >= 1.0 && ux >= 0.0 {
        weight(&scaled, &cfg) >= weight(&x, &cfg) - tol
    } else {
        true
    };
    if homogeneous && ordered {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "lambda": lambda, "u_x": ux, "u_lambda_x": ul}))
    }
}

fn p6_risk_tail_subadditivity(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let y = random_scenarios(rng, x.len());
    let x = into_region(rng, &x, &spec, &cfg);
    let y = into_region(rng, &y, &spec, &cfg);
    let members = risk_tail_membership(&dist(&x), &cfg).unwrap() && risk_tail_membership(&dist(&y), &cfg).unwrap();
    let sum = ScenarioSet::new(vec![x.clone(), y.clone()]).unwrap().total();
    let (lhs, rhs) = (sv(&sum, &cfg), sv(&x, &cfg) + sv(&y, &cfg));
    if members && lhs <= rhs + slack(&[&x, &y, &sum]) {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "y": y, "members": members, "slidevar_sum": lhs, "sum_of_slidevar": rhs}))
    }
}

fn p7_translation(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let a = rng.random_range(-20.0..20.0);
    let shifted: Vec<f64> = x.iter().map(|v| v + a).collect();
    let (lhs, base) = (sv(&shifted, &cfg), sv(&x, &cfg) + a);
    let tol = slack(&[&x, &shifted]);
    let ok = if a >= 0.0 { lhs >= base - tol } else { lhs <= base + tol };
    if ok {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "a": a, "slidevar_x_plus_a": lhs, "slidevar_x_plus_a_rhs": base}))
    }
}

fn p8_scaling(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, mut x } = instance(rng);
    let u = u_of(&x, &cfg);
    if u < 0.0 {
        x.iter_mut().for_each(|v| *v -= u);
    }
    let lambda = if rng.random_bool(0.5) {
        rng.random_range(1.0..3.0)
    } else {
        rng.random_range(0.0..1.0)
    };
    let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
    let (lhs, rhs) = (sv(&scaled, &cfg), lambda * sv(&x, &cfg));
    let tol = slack(&[&x, &scaled]);
    let ok = if lambda >= 1.0 {
        lhs >= rhs - tol
    } else {
        lhs <= rhs + tol
    };
    if ok {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "lambda": lambda, "slidevar_lambda_x": lhs, "lambda_slidevar_x": rhs}))
    }
}

fn p9_risk_tail_convexity(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let y = random_scenarios(rng, x.len());
    let x = into_region(rng, &x, &spec, &cfg);
    let y = into_region(rng, &y, &spec, &cfg);
    let lambda = rng.random_range(0.0..=1.0);
    let set = ScenarioSet::new(vec![x.clone(), y.clone()]).unwrap();
    let mix = set.linear_combination(&[lambda, 1.0 - lambda]).unwrap();
    let lhs = slide_var(&mix, &cfg).unwrap();
    let rhs = lambda * sv(&x, &cfg) + (1.0 - lambda) * sv(&y, &cfg);
    if lhs <= rhs + slack(&[&x, &y]) {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "y": y, "lambda": lambda, "slidevar_mix": lhs, "mix_of_slidevar": rhs}))
    }
}

fn p10_upward_closure(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let x = into_region(rng, &x, &spec, &cfg);
    let y = dominating(rng, &x);
    let (mx, my) = (
        risk_tail_membership(&dist(&x), &cfg).unwrap(),
        risk_tail_membership(&dist(&y), &cfg).unwrap(),
    );
    if mx && my {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "y": y, "x_member": mx, "y_member": my}))
    }
}

fn p12_degeneration(rng: &mut ChaCha8Rng) -> Result<(), serde_json::Value> {
    let Instance { spec, cfg, x } = instance(rng);
    let d = dist(&x);
    let one = cfg.with_normalization(NormalizationFunction::constant(1.0).unwrap());
    let zero = cfg.with_normalization(NormalizationFunction::constant(0.0).unwrap());
    let (s1, c) = (slide_var(&d, &one).unwrap(), cvar(&d, cfg.alpha()).unwrap());
    let (s0, v) = (slide_var(&d, &zero).unwrap(), var(&d, cfg.beta()).unwrap());
    if (s1 - c).abs() <= DEGENERATION_TOLERANCE && (s0 - v).abs() <= DEGENERATION_TOLERANCE {
        Ok(())
    } else {
        Err(json!({"spec": spec, "x": x, "s_one": s1, "cvar_alpha": c, "s_zero": s0, "var_beta": v}))
    }
}

/// `γ ∈ {0.05, 0.10, …, 0.95}`.
pub fn gamma_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 * 0.05).collect()
}

/// `β ∈ {0.80, 0.81, …, 0.99}`.
pub fn beta_grid() -> Vec<f64> {
    (80..=99).map(|i| i as f64 / 100.0).collect()
}

/// Every built-in family on the `(γ, β)` grid. Flat and step do not take
/// `γ`; step levels split `[β, 1)` into thirds with `γ`-dependent weights.
pub fn family_grid() -> Vec<(f64, AversionSpec)> {
    let mut out = Vec::new();
    for beta in beta_grid() {
        for gamma in gamma_grid() {
            out.push((beta, AversionSpec::Exponential { gamma }));
            out.push((beta, AversionSpec::PowerConvex { gamma }));
            out.push((beta, AversionSpec::PowerConcave { gamma }));
            let w1 = gamma / 2.0;
            out.push((
                beta,
                AversionSpec::Step {
                    levels: [beta + (1.0 - beta) / 3.0, beta + 2.0 * (1.0 - beta) / 3.0],
                    weights: [w1, 1.0 - gamma, gamma - w1],
                },
            ));
        }
        out.push((beta, AversionSpec::Flat));
    }
    out
}

fn p11_family_norms() -> PropertyOutcome {
    let grid = family_grid();
    let mut failures = 0;
    let mut counterexample = None;
    for (beta, spec) in &grid {
        let outcome = spec.build(*beta).map(|f| f.norm());
        let ok = matches!(outcome, Ok(Some(norm)) if (norm - 1.0).abs() <= NORM_TOLERANCE);
        if !ok {
            failures += 1;
            counterexample.get_or_insert_with(|| {
                json!({"beta": beta, "aversion": spec, "outcome": format!("{outcome:?}")}).to_string()
            });
        }
    }
    PropertyOutcome {
        id: "P11",
        name: "unit norm of built-in aversion families",
        cases: grid.len(),
        failures,
        counterexample,
    }
}

/// Stored two-position fixture on which VaR must fail sub-additivity.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct VarSubadditivityFixture {
    pub alpha: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

const VAR_FIXTURE: &str = include_str!("../fixtures/var_subadditivity.toml");

pub fn var_fixture() -> VarSubadditivityFixture {
    toml::from_str(VAR_FIXTURE).expect("bundled fixture parses")
}

fn var_subadditivity_fixture() -> PropertyOutcome {
    let f = var_fixture();
    let set = ScenarioSet::new(vec![f.x.clone(), f.y.clone()]).expect("fixture positions are aligned");
    let joint = var(&set.combine(Combine::Sum).unwrap(), f.alpha).unwrap();
    let separate = var(&set.marginal(0).unwrap(), f.alpha).unwrap() + var(&set.marginal(1).unwrap(), f.alpha).unwrap();
    let violated = joint > separate;
    PropertyOutcome {
        id: "VAR-SUBADD",
        name: "VaR sub-additivity fails on the stored fixture",
        cases: 1,
        failures: usize::from(!violated),
        counterexample: (!violated)
            .then(|| json!({"alpha": f.alpha, "var_sum": joint, "sum_of_var": separate}).to_string()),
    }
}
