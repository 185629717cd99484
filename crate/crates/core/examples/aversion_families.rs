//! Built-in risk-aversion functions and a custom one checked by quadrature.
//!
//! ```bash
//! cargo run --example aversion_families
//! ```

use slidevar::{tail_thickness, AversionFunction, CustomAversion, EmpiricalDistribution, GaussianMixture};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let beta = 0.95;
    let families = [
        AversionFunction::exponential(beta, 0.2)?,
        AversionFunction::power_convex(beta, 0.5)?,
        AversionFunction::power_concave(beta, 0.5)?,
        AversionFunction::flat(beta)?,
        AversionFunction::step(beta, [0.97, 0.99], [0.5, 0.3, 0.2])?,
    ];

    let mut rng = slidevar::empirical::seeded_rng(11);
    let losses = EmpiricalDistribution::new(GaussianMixture::normal(0.0, 1.0)?.draw_n(&mut rng, 10_000))?;

    println!(
        "{:<14} {:>10} {:>10} {:>10} {:>12}",
        "family", "phi(0.95)", "phi(0.999)", "norm", "U(N(0,1))"
    );
    for phi in &families {
        println!(
            "{:<14} {:>10.4} {:>10.4} {:>10.6} {:>12.6}",
            phi.family().name(),
            phi.density(0.95),
            phi.density(0.999),
            phi.norm().unwrap_or(f64::NAN),
            tail_thickness(&losses, phi)?,
        );
    }

    // linear ramp on [β, 1], normalized; no antiderivative supplied
    let ramp = CustomAversion::new("ramp", move |p: f64| 2.0 * (p - beta) / (1.0 - beta).powi(2));
    let phi = AversionFunction::custom(beta, ramp)?;
    println!(
        "custom ramp: norm = {:.10}, U = {:.6}",
        phi.norm().unwrap_or(f64::NAN),
        tail_thickness(&losses, &phi)?
    );

    // decreasing weights are rejected at construction
    let bad = CustomAversion::new("decreasing", move |p: f64| 2.0 * (1.0 - p) / (1.0 - beta).powi(2));
    match AversionFunction::custom(beta, bad) {
        Ok(_) => println!("unexpectedly admissible"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
