//! Sharp momentum states. A plane wave has a definite distance eigenvalue
//! t sqrt(1 - (p/m)^2); in a box only the levels with p_n = n pi / L below
//! the mass carry one.
//!
//!     cargo run --example box_spectrum

use worldline::spectra::{box_spectrum, planewave_eigenvalue};

fn main() {
    let mass = 1.0;
    let t = 1.0;

    println!("plane waves, mass {mass}, t = {t}:");
    for &p in &[0.0, 0.3, 0.6, 0.9, 0.99] {
        let s = planewave_eigenvalue(p, mass, t).expect("subluminal");
        println!("  p = {p:>5}: s = {s:.12}");
    }

    let length = 10.0;
    println!();
    println!("box of length {length}, mass {mass}, t = {t}:");
    for level in box_spectrum(length, mass, t, 8).expect("valid box") {
        match level.s_eigenvalue {
            Some(s) => println!("  n = {:>2}  p_n = {:.6}  s = {s:.12}", level.n, level.p_n),
            None => println!(
                "  n = {:>2}  p_n = {:.6}  (p_n >= mass, no eigenvalue)",
                level.n, level.p_n
            ),
        }
    }
}
