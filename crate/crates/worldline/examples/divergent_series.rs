//! The asymptotic expansion of the expected distance: terms shrink, pass
//! through a minimum, then blow up. Truncating at the minimal term gives
//! the best value the series can offer.
//!
//!     cargo run --example divergent_series

use worldline::series::{expansion_report, term_ratios};

fn main() {
    let (x, beta, t) = (0.1, 0.5, 1.0);
    let report = expansion_report(x, beta, t, 15).expect("valid inputs");
    let ratios = term_ratios(&report);

    println!("x={x}, beta={beta}, t={t}");
    println!(
        "{:>3} {:>24} {:>24} {:>10}",
        "n", "term", "partial sum", "|ratio|"
    );
    for (n, (term, partial)) in report.terms.iter().zip(&report.partial_sums).enumerate() {
        let ratio = if n == 0 {
            String::new()
        } else {
            format!("{:.4}", ratios[n - 1])
        };
        println!("{n:>3} {term:>24.16e} {partial:>24.16e} {ratio:>10}");
    }
    println!();
    println!(
        "minimal term at n={} ({:.3e})",
        report.min_term_index, report.min_term_value
    );
    println!("truncated sum      {:.16}", report.truncated_sum);
    println!("classical distance {:.16}", report.classical_ref);
    match report.divergent_after {
        Some(k) => println!("terms grow from n={k}: the series diverges"),
        None => println!("no growth within this window"),
    }
}
