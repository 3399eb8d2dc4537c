//! Distance estimate from a sampled trajectory. Position noise biases the
//! estimate downward: velocity jitter enters under sqrt(1 - v^2), which
//! only ever shrinks, and steps pushed past light speed stop counting.
//!
//!     cargo run --example weak_trajectory

use worldline::weaktraj::{synthesize_linear_trajectory, weak_distance_estimate};

fn main() {
    let v = [0.0, 0.0, 0.6];
    let (dt, n) = (0.1, 1001);

    let clean = synthesize_linear_trajectory(v, 0.0, dt, n, 0.0, 0).expect("valid");
    let clean_est = weak_distance_estimate(&clean);
    println!(
        "noise-free line, speed 0.6, duration {}: distance {:.12}",
        clean.duration(),
        clean_est.distance
    );

    println!();
    println!(
        "{:>6} {:>8} {:>16} {:>14}",
        "noise", "seed", "distance", "superluminal"
    );
    for &amp in &[0.001, 0.01, 0.05] {
        for seed in 0..3u64 {
            let traj = synthesize_linear_trajectory(v, 0.0, dt, n, amp, seed).expect("valid");
            let est = weak_distance_estimate(&traj);
            println!(
                "{amp:>6} {seed:>8} {:>16.10} {:>14}",
                est.distance, est.superluminal_steps
            );
        }
    }
}
