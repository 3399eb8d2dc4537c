use proptest::prelude::*;
use worldline::weaktraj::{synthesize_linear_trajectory, weak_distance_estimate, WeakTrajectory};

// Expected distance of the noisy reference line below (speed 0.6, noise
// 0.01, dt 0.1, 1001 samples): the added velocity jitter is not zero mean
// under the square root, so the true expectation sits well below the
// noise-free 80, at 0.750025906734829 per unit time.
const NOISY_LINE_EXPECTATION: f64 = 75.0025906734829;

fn velocity() -> impl Strategy<Value = [f64; 3]> {
    (
        0.0f64..0.95,
        0.0f64..std::f64::consts::PI,
        0.0f64..std::f64::consts::TAU,
    )
        .prop_map(|(s, th, ph)| {
            [
                s * th.sin() * ph.cos(),
                s * th.sin() * ph.sin(),
                s * th.cos(),
            ]
        })
}

fn line(v: [f64; 3], t0: f64, dt: f64, n: usize) -> WeakTrajectory {
    let points = (0..n)
        .map(|k| {
            let t = t0 + dt * k as f64;
            [v[0] * t, v[1] * t, v[2] * t]
        })
        .collect();
    WeakTrajectory::new(t0, dt, points).unwrap()
}

proptest! {
    #[test]
    fn line_distance_is_dilated_duration(
        v in velocity(),
        t0 in -20.0f64..20.0,
        dt in 0.01f64..1.0,
        n in 3usize..150,
    ) {
        let traj = line(v, t0, dt, n);
        let speed2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        let want = traj.duration() * (1.0 - speed2).sqrt();
        let est = weak_distance_estimate(&traj);
        prop_assert_eq!(est.superluminal_steps, 0);
        prop_assert!((est.distance - want).abs() <= 1e-12 * want.max(1e-300));
    }

    #[test]
    fn reversal_preserves_distance(
        v in velocity(),
        dt in 0.01f64..1.0,
        n in 3usize..150,
    ) {
        let traj = line(v, 0.0, dt, n);
        let mut rev = traj.points().to_vec();
        rev.reverse();
        let back = WeakTrajectory::new(0.0, dt, rev).unwrap();
        let d0 = weak_distance_estimate(&traj).distance;
        let d1 = weak_distance_estimate(&back).distance;
        prop_assert!((d0 - d1).abs() <= 1e-12 * d0.max(1e-300));
    }

    #[test]
    fn refinement_preserves_line_distance(
        v in velocity(),
        dt in 0.01f64..1.0,
        n in 3usize..100,
    ) {
        let coarse = weak_distance_estimate(&line(v, 1.0, dt, n)).distance;
        let fine = weak_distance_estimate(&line(v, 1.0, dt / 2.0, 2 * (n - 1) + 1)).distance;
        prop_assert!((coarse - fine).abs() <= 1e-12 * coarse.max(1e-300));
    }

    #[test]
    fn doubling_the_step_doubles_the_distance(
        v in velocity(),
        dt in 0.01f64..0.5,
        n in 3usize..100,
    ) {
        let base = weak_distance_estimate(&line(v, 0.0, dt, n)).distance;
        let stretched = weak_distance_estimate(&line(v, 0.0, 2.0 * dt, n)).distance;
        prop_assert!((stretched - 2.0 * base).abs() <= 1e-12 * stretched.max(1e-300));
    }

    #[test]
    fn zero_noise_synthesis_matches_exact_line(
        v in velocity(),
        dt in 0.01f64..1.0,
        n in 3usize..100,
        seed in any::<u64>(),
    ) {
        let synth = synthesize_linear_trajectory(v, 0.0, dt, n, 0.0, seed).unwrap();
        let d_synth = weak_distance_estimate(&synth).distance;
        let d_line = weak_distance_estimate(&line(v, 0.0, dt, n)).distance;
        prop_assert!((d_synth - d_line).abs() <= 1e-12 * d_line.max(1e-300));
    }
}

// statistical contract of the estimator under position noise: over 100
// seeds the sample mean must sit within three standard errors of the
// derived expectation, and the bias relative to the noise-free line must
// be negative (noise can only shorten a worldline's proper distance)
#[test]
fn noisy_line_mean_matches_expectation_with_negative_bias() {
    let v = [0.0, 0.0, 0.6];
    let samples: Vec<f64> = (0..100u64)
        .map(|seed| {
            let traj = synthesize_linear_trajectory(v, 0.0, 0.1, 1001, 0.01, seed).unwrap();
            weak_distance_estimate(&traj).distance
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var =
        samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (samples.len() - 1) as f64;
    let standard_error = (var / samples.len() as f64).sqrt();

    let noise_free = 80.0;
    assert!(
        mean < noise_free,
        "mean {mean} not below the noise-free distance {noise_free}"
    );
    let gap = (mean - NOISY_LINE_EXPECTATION).abs();
    assert!(
        gap <= 3.0 * standard_error,
        "mean {mean}, expectation {NOISY_LINE_EXPECTATION}, gap {gap:.3e} vs 3 SE {:.3e}",
        3.0 * standard_error
    );
}
