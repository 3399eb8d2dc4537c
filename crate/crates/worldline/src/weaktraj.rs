//! Distance estimate from a sampled trajectory.
//!
//! A trajectory measured weakly at uniform times gives velocities only
//! through finite differences. Summing `dt sqrt(1 - |v|^2)` over the
//! backward differences estimates the same worldline distance the
//! wavepacket formalism computes, and degrades gracefully: a step whose
//! apparent speed exceeds light contributes the real part of the square
//! root, which is zero, and is tallied instead of poisoning the sum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryError {
    /// A trajectory needs at least two samples to have a velocity.
    TooFewPoints(usize),
    NonPositiveStep(f64),
    /// Sample times must be uniform to 1e-9 relative; carries the first
    /// offending index.
    NonUniformTimes {
        index: usize,
    },
    NonFinite(&'static str),
    LengthMismatch {
        times: usize,
        points: usize,
    },
    BadNoise(f64),
    IndexOutOfRange {
        k: usize,
        len: usize,
    },
}

impl fmt::Display for TrajectoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrajectoryError::TooFewPoints(n) => {
                write!(f, "trajectory needs at least 2 points, got {n}")
            }
            TrajectoryError::NonPositiveStep(dt) => {
                write!(f, "time step must be positive, got {dt}")
            }
            TrajectoryError::NonUniformTimes { index } => {
                write!(f, "sample times are not uniformly spaced at row {index}")
            }
            TrajectoryError::NonFinite(what) => write!(f, "{what} must be finite"),
            TrajectoryError::LengthMismatch { times, points } => {
                write!(f, "{times} sample times for {points} points")
            }
            TrajectoryError::BadNoise(a) => {
                write!(f, "noise amplitude must be nonnegative and finite, got {a}")
            }
            TrajectoryError::IndexOutOfRange { k, len } => {
                write!(f, "velocity index {k} outside 1..{len}")
            }
        }
    }
}

impl std::error::Error for TrajectoryError {}

/// Uniformly sampled positions. Validated at construction; the estimate
/// and the finite differences rely on it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakTrajectory {
    t0: f64,
    dt: f64,
    points: Vec<[f64; 3]>,
}

/// Distance accumulated over a trajectory plus the count of steps whose
/// apparent speed exceeded light.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEstimate {
    pub distance: f64,
    pub superluminal_steps: usize,
}

impl WeakTrajectory {
    pub fn new(t0: f64, dt: f64, points: Vec<[f64; 3]>) -> Result<Self, TrajectoryError> {
        if !t0.is_finite() {
            return Err(TrajectoryError::NonFinite("start time"));
        }
        if !dt.is_finite() {
            return Err(TrajectoryError::NonFinite("time step"));
        }
        if dt <= 0.0 {
            return Err(TrajectoryError::NonPositiveStep(dt));
        }
        if points.len() < 2 {
            return Err(TrajectoryError::TooFewPoints(points.len()));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(TrajectoryError::NonFinite("coordinate"));
        }
        Ok(WeakTrajectory { t0, dt, points })
    }

    /// Build from explicit sample times, which must be uniformly spaced to
    /// one part in 1e9.
    pub fn from_samples(times: &[f64], points: Vec<[f64; 3]>) -> Result<Self, TrajectoryError> {
        if times.len() != points.len() {
            return Err(TrajectoryError::LengthMismatch {
                times: times.len(),
                points: points.len(),
            });
        }
        if times.len() < 2 {
            return Err(TrajectoryError::TooFewPoints(times.len()));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(TrajectoryError::NonFinite("sample time"));
        }
        let n = times.len();
        let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
        if dt <= 0.0 {
            return Err(TrajectoryError::NonPositiveStep(dt));
        }
        for k in 1..n {
            if ((times[k] - times[k - 1]) - dt).abs() > 1e-9 * dt {
                return Err(TrajectoryError::NonUniformTimes { index: k });
            }
        }
        WeakTrajectory::new(times[0], dt, points)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn time_at(&self, k: usize) -> f64 {
        self.t0 + self.dt * k as f64
    }

    /// Total sampled time span.
    pub fn duration(&self) -> f64 {
        self.dt * (self.points.len() - 1) as f64
    }
}

/// Backward-difference velocity of step `k`, defined for `1 <= k < len`.
pub fn finite_diff_velocity(traj: &WeakTrajectory, k: usize) -> Result<[f64; 3], TrajectoryError> {
    if k == 0 || k >= traj.points.len() {
        return Err(TrajectoryError::IndexOutOfRange {
            k,
            len: traj.points.len(),
        });
    }
    let a = traj.points[k - 1];
    let b = traj.points[k];
    Ok([
        (b[0] - a[0]) / traj.dt,
        (b[1] - a[1]) / traj.dt,
        (b[2] - a[2]) / traj.dt,
    ])
}

/// Worldline distance accumulated along the trajectory. Each step adds
/// `dt` times the real part of `sqrt(1 - |v|^2)`; steps with `|v| > 1`
/// therefore add nothing and are counted separately.
pub fn weak_distance_estimate(traj: &WeakTrajectory) -> IntervalEstimate {
    let mut distance = 0.0f64;
    let mut superluminal_steps = 0usize;
    for k in 1..traj.points.len() {
        let v = finite_diff_velocity(traj, k).expect("index in range");
        let v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if v2 <= 1.0 {
            distance += traj.dt * (1.0 - v2).sqrt();
        } else {
            superluminal_steps += 1;
        }
    }
    IntervalEstimate {
        distance,
        superluminal_steps,
    }
}

/// Straight-line trajectory with Gaussian position noise. The generator
/// is seeded explicitly and coordinates are drawn x, y, z per point, so a
/// given seed always produces the same samples.
pub fn synthesize_linear_trajectory(
    velocity: [f64; 3],
    t0: f64,
    dt: f64,
    n_points: usize,
    noise_amplitude: f64,
    seed: u64,
) -> Result<WeakTrajectory, TrajectoryError> {
    if velocity.iter().any(|c| !c.is_finite()) {
        return Err(TrajectoryError::NonFinite("velocity"));
    }
    if !(noise_amplitude.is_finite() && noise_amplitude >= 0.0) {
        return Err(TrajectoryError::BadNoise(noise_amplitude));
    }
    if n_points < 2 {
        return Err(TrajectoryError::TooFewPoints(n_points));
    }
    let normal = Normal::new(0.0, noise_amplitude)
        .map_err(|_| TrajectoryError::BadNoise(noise_amplitude))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n_points);
    for k in 0..n_points {
        let t = t0 + dt * k as f64;
        points.push([
            velocity[0] * t + normal.sample(&mut rng),
            velocity[1] * t + normal.sample(&mut rng),
            velocity[2] * t + normal.sample(&mut rng),
        ]);
    }
    WeakTrajectory::new(t0, dt, points)
}
