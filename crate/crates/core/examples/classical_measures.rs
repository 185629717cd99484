//! VaR, CVaR, distortion, GlueVaR and Lambda-VaR on one loss sample.
//!
//! ```bash
//! cargo run --example classical_measures
//! ```

use slidevar::{
    cvar, distortion, gluevar, lambda_var, var, DistortionFunction, EmpiricalDistribution, GlueVaRWeights,
    LambdaFunction,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = EmpiricalDistribution::new((1..=100).map(f64::from).collect())?;
    let (beta, alpha) = (0.95, 0.99);

    println!("VaR_{beta}  = {}", var(&d, beta)?);
    println!("CVaR_{beta} = {}", cvar(&d, beta)?);
    println!("CVaR_{alpha} = {}", cvar(&d, alpha)?);

    // CVaR as a distortion: g(u) = min(u / (1 - α), 1)
    let g = DistortionFunction::cvar(beta)?;
    println!("Choquet with CVaR distortion = {}", distortion(&d, &g));
    println!(
        "expectation (identity distortion) = {}",
        distortion(&d, &DistortionFunction::identity())
    );

    let w = GlueVaRWeights::new(0.2, 0.3, 0.5)?;
    println!("GlueVaR {:?} = {}", w.as_array(), gluevar(&d, beta, alpha, &w)?);

    // confidence rises from 95% to 98% for losses of 96 and beyond
    let lambda = LambdaFunction::step(0.95, vec![(96.0, 0.98)])?;
    let lv = lambda_var(&d, &lambda);
    println!("Lambda-VaR = {} (saturated: {})", lv.value, lv.saturated);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
