//! Exact step quantiles, tail integrals and aligned scenario algebra.
//!
//! ```bash
//! cargo run --example quantiles_and_tails
//! ```

use slidevar::empirical::{ConstantWeight, EmpiricalDistribution};
use slidevar::{Combine, ScenarioSet};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = EmpiricalDistribution::new(vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0])?;
    println!("sorted scenarios: {:?}", d.scenarios());
    for p in [0.0, 0.25, 0.5, 0.874, 0.875, 0.99] {
        println!("F^-1({p:<5}) = {}", d.quantile(p)?);
    }

    // ∫_p^1 F⁻¹(u) du / (1 - p) is the tail average behind CVaR
    let p = 0.75;
    let tail = d.integrate_quantile(&ConstantWeight(1.0), p, 1.0)? / (1.0 - p);
    println!("mean of the top quarter = {tail}");

    let book = ScenarioSet::new(vec![vec![1.0, -2.0, 0.5, 4.0], vec![-1.0, 3.0, 0.0, -2.0]])?;
    let total = book.combine(Combine::Sum)?;
    println!("portfolio scenarios: {:?}", total.scenarios());
    let levered = book.apply(Combine::Scale(2.0)).combine(Combine::Sum)?;
    println!("2x levered max loss: {}", levered.max());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
