//! SlideVaR on calm and stressed samples, and the risk-tail region.
//!
//! ```bash
//! cargo run --example slidevar_basics
//! ```

use slidevar::{
    risk_tail_membership, AversionFunction, EmpiricalDistribution, GaussianMixture, NormalizationFunction, SlideVaR,
    SlideVaRConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SlideVaRConfig::new(
        0.99,
        AversionFunction::exponential(0.95, 0.2)?,
        NormalizationFunction::piecewise_linear(1.0, 4.0)?,
    )?;

    let mut rng = slidevar::empirical::seeded_rng(3);
    for (label, sigma) in [("calm", 0.8), ("normal", 1.5), ("stressed", 3.0)] {
        let d = EmpiricalDistribution::new(GaussianMixture::normal(0.0, sigma)?.draw_n(&mut rng, 5_000))?;
        let s = SlideVaR::evaluate(&d, &cfg)?;
        println!(
            "{label:<9} VaR_b={:7.4} CVaR_a={:7.4} U={:7.4} S(U)={:6.4} SlideVaR={:7.4} risk-tail={}",
            s.var_beta,
            s.cvar_alpha,
            s.tail_thickness,
            s.weight,
            s.value,
            risk_tail_membership(&d, &cfg)?
        );
    }

    // the two extreme normalizations recover the classical measures
    let d = EmpiricalDistribution::new((1..=100).map(f64::from).collect())?;
    let var_like = cfg.with_normalization(NormalizationFunction::constant(0.0)?);
    let cvar_like = cfg.with_normalization(NormalizationFunction::constant(1.0)?);
    println!(
        "S = 0 -> {}, S = 1 -> {}",
        slidevar::slide_var(&d, &var_like)?,
        slidevar::slide_var(&d, &cvar_like)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
