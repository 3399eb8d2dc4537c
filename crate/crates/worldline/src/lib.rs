//! Expectation values of the worldline-distance observable for free
//! relativistic particles.
//!
//! The central object is the operator whose eigenvalue on a momentum
//! eigenstate is `t * sqrt(1 - (p/m)^2)`, the proper distance a classical
//! particle of that momentum covers in coordinate time `t`. For a Gaussian
//! wavepacket the expectation has three complementary evaluation routes,
//! each exposed by one module here:
//!
//! * [`moments`] evaluates the even momentum moments of the packet in
//!   closed form and cross-checks them against direct quadrature.
//! * [`series`] expands the square root binomially, producing a factorially
//!   divergent asymptotic series whose minimal-term truncation approximates
//!   the expectation in the near-classical regime.
//! * [`quadrature`] integrates the momentum density directly over the
//!   subluminal window, the only route that stays meaningful when the
//!   packet has significant support at relativistic momenta.
//!
//! [`spectra`] handles the discrete cases (plane waves, particle in a box)
//! and [`weaktraj`] estimates the same distance from a sampled trajectory
//! by finite differences.
//!
//! Everything is expressed in units where the speed of light is 1. The
//! dimensionless combination `x = 1 / (m sigma)^2` measures how
//! relativistic the packet's momentum spread is, and `beta = p0 / m` is the
//! drift velocity.

// reference constants keep all their published digits even where f64
// rounds them
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod moments;
pub mod quadrature;
pub mod series;
pub mod specfun;
pub mod spectra;
pub mod weaktraj;

pub use moments::{GaussianPacket, MomentError, MomentRow, PacketError};
pub use quadrature::{IntervalRate, QuadratureError, QuadratureSpec, SweepPoint, TruncationLimits};
pub use series::{SeriesError, SeriesReport};
pub use spectra::{BoxLevel, SpectraError};
pub use weaktraj::{IntervalEstimate, TrajectoryError, WeakTrajectory};
