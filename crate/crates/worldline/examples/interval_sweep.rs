//! Distance rate against packet spread for the four reference drift
//! velocities. Slow packets coincide on one curve; fast packets overshoot
//! their classical rate at intermediate spreads and everything collapses
//! toward zero as x grows.
//!
//!     cargo run --example interval_sweep

use worldline::quadrature::{log_grid, sweep, QuadratureSpec, FIGURE_BETAS};

fn main() {
    let grid = log_grid(1e-8, 1e4, 25).expect("valid grid");
    let spec = QuadratureSpec::default();
    let rows = sweep(&grid, &FIGURE_BETAS, &spec);

    print!("{:>10}", "x");
    for beta in FIGURE_BETAS {
        print!(" {:>12}", format!("beta={beta}"));
    }
    println!();
    for (i, &x) in grid.iter().enumerate() {
        print!("{x:>10.2e}");
        for (j, _) in FIGURE_BETAS.iter().enumerate() {
            match &rows[j * grid.len() + i].ds_dt {
                Ok(v) => print!(" {v:>12.6}"),
                Err(_) => print!(" {:>12}", "error"),
            }
        }
        println!();
    }
    println!();
    for beta in FIGURE_BETAS {
        println!(
            "classical rate at beta={beta}: {:.6}",
            (1.0 - beta * beta).sqrt()
        );
    }
}
