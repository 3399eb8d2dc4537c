//! Narrow-momentum packets move classically: at x = 1e-8 both evaluation
//! routes approach sqrt(1 - beta^2). The quadrature lands slightly below
//! it because its 3-sigma window keeps erf(3/sqrt(2)) ~ 0.99730 of the
//! Gaussian mass; dividing that deficit out recovers the classical value.
//!
//!     cargo run --example classical_limit

use worldline::quadrature::{ds_dt_quadrature, QuadratureSpec};
use worldline::series::expansion_report;

fn main() {
    let x = 1e-8;
    let spec = QuadratureSpec::default();
    let window_mass = 0.9973002039367398;

    println!("x = {x:.0e}");
    println!(
        "{:>6} {:>20} {:>20} {:>20} {:>20}",
        "beta", "classical", "series (truncated)", "quadrature", "quad / window mass"
    );
    for &beta in &[0.01f64, 0.1, 0.5, 0.990, 0.999] {
        let classical = (1.0 - beta * beta).sqrt();
        let series = expansion_report(x, beta, 1.0, 40)
            .expect("valid")
            .truncated_sum;
        let quad = ds_dt_quadrature(x, beta, &spec).expect("converges").value;
        println!(
            "{beta:>6} {classical:>20.15} {series:>20.15} {quad:>20.15} {:>20.15}",
            quad / window_mass
        );
    }
}
