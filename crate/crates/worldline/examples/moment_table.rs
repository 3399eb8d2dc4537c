//! Closed-form momentum moments of a Gaussian packet next to their
//! numerical cross-check.
//!
//!     cargo run --example moment_table

use worldline::moments::{moment_table, GaussianPacket};

fn main() {
    let packet = GaussianPacket::new(1.0, 0.5, 1.0).expect("valid packet");
    println!(
        "packet: sigma={}, p0={}, mass={}  (x={:.3}, beta={})",
        packet.sigma(),
        packet.p0(),
        packet.mass(),
        packet.x(),
        packet.beta()
    );
    println!(
        "{:>3} {:>24} {:>24} {:>12}",
        "n", "closed form", "oracle", "rel diff"
    );
    for row in moment_table(&packet, 12, 1e-10).expect("converges") {
        println!(
            "{:>3} {:>24.16e} {:>24.16e} {:>12.2e}",
            row.n, row.closed_form, row.oracle, row.rel_discrepancy
        );
    }
}
