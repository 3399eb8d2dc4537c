//! Even momentum moments of a drifting Gaussian wavepacket.
//!
//! The packet is the normalized momentum-space density of a minimal
//! Gaussian with width `sigma` centered at `p0 >= 0`, symmetrized over the
//! sign of p. Its even moments have a closed form built from a
//! half-integer gamma, a factorial, and a Laguerre polynomial of order one
//! half evaluated at `-(sigma p0)^2`. The closed form is the production
//! path; a direct quadrature of the defining integral serves as an
//! independent cross-check and is kept deliberately dumb.

use crate::quadrature::adaptive_integrate;
use crate::specfun::{gamma_neg_half_log, laguerre_half_ln, ln_factorial};
use std::f64::consts::PI;
use std::fmt;

/// Largest moment index. The closed form stays inside f64 range for every
/// admissible packet up to here; the oracle integrand is exponent-formed
/// and holds up as well.
pub const MAX_MOMENT_INDEX: u32 = 80;

const ORACLE_PANEL_BUDGET: u32 = 4000;

#[derive(Debug, Clone, PartialEq)]
pub enum PacketError {
    NonPositiveWidth(f64),
    NegativeMomentum(f64),
    NonPositiveMass(f64),
    /// Drift at or past the speed of light: requires `p0 < mass`.
    SuperluminalDrift {
        p0: f64,
        mass: f64,
    },
    NonFinite(&'static str),
}

impl fmt::Display for PacketError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PacketError::NonPositiveWidth(s) => write!(f, "packet width must be positive, got {s}"),
            PacketError::NegativeMomentum(p) => {
                write!(f, "central momentum must be nonnegative, got {p}")
            }
            PacketError::NonPositiveMass(m) => write!(f, "mass must be positive, got {m}"),
            PacketError::SuperluminalDrift { p0, mass } => {
                write!(f, "beta must be < 1 (p0 = {p0}, mass = {mass})")
            }
            PacketError::NonFinite(what) => write!(f, "{what} must be finite"),
        }
    }
}

impl std::error::Error for PacketError {}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentError {
    IndexOutOfRange {
        n: u32,
        max: u32,
    },
    BadTolerance(f64),
    /// The cross-check quadrature ran out of subdivisions. Carries its best
    /// estimate and the error it did reach.
    OracleDidNotConverge {
        best: f64,
        achieved: f64,
        requested: f64,
    },
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::IndexOutOfRange { n, max } => {
                write!(f, "moment index {n} exceeds supported maximum {max}")
            }
            MomentError::BadTolerance(t) => write!(f, "tolerance must be positive, got {t}"),
            MomentError::OracleDidNotConverge {
                best,
                achieved,
                requested,
            } => write!(
                f,
                "moment quadrature stalled at error {achieved:e} (requested {requested:e}, best estimate {best:e})"
            ),
        }
    }
}

impl std::error::Error for MomentError {}

/// A Gaussian momentum packet. Constructing one validates every field, so
/// downstream code never re-checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    sigma: f64,
    p0: f64,
    mass: f64,
}

impl GaussianPacket {
    pub fn new(sigma: f64, p0: f64, mass: f64) -> Result<Self, PacketError> {
        if !sigma.is_finite() {
            return Err(PacketError::NonFinite("width"));
        }
        if !p0.is_finite() {
            return Err(PacketError::NonFinite("central momentum"));
        }
        if !mass.is_finite() {
            return Err(PacketError::NonFinite("mass"));
        }
        if sigma <= 0.0 {
            return Err(PacketError::NonPositiveWidth(sigma));
        }
        if p0 < 0.0 {
            return Err(PacketError::NegativeMomentum(p0));
        }
        if mass <= 0.0 {
            return Err(PacketError::NonPositiveMass(mass));
        }
        if p0 >= mass {
            return Err(PacketError::SuperluminalDrift { p0, mass });
        }
        Ok(GaussianPacket { sigma, p0, mass })
    }

    /// Packet in natural units: mass 1, width chosen so that
    /// `x = 1/(mass * sigma)^2` and drift `beta = p0/mass`.
    pub fn from_dimensionless(x: f64, beta: f64) -> Result<Self, PacketError> {
        if !x.is_finite() || x <= 0.0 {
            return Err(PacketError::NonPositiveWidth(x));
        }
        GaussianPacket::new(1.0 / x.sqrt(), beta, 1.0)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Dimensionless spread parameter `1/(mass * sigma)^2`.
    pub fn x(&self) -> f64 {
        1.0 / (self.mass * self.sigma).powi(2)
    }

    /// Drift velocity `p0 / mass`, guaranteed in [0, 1).
    pub fn beta(&self) -> f64 {
        self.p0 / self.mass
    }
}

/// Row of the moment comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub n: u32,
    pub closed_form: f64,
    pub oracle: f64,
    pub rel_discrepancy: f64,
}

/// Closed-form `<p^{2n}>`, evaluated in log space so the gamma, the
/// factorial, and the Laguerre factor can individually overflow.
pub fn moment_closed_form(packet: &GaussianPacket, n: u32) -> Result<f64, MomentError> {
    if n > MAX_MOMENT_INDEX {
        return Err(MomentError::IndexOutOfRange {
            n,
            max: MAX_MOMENT_INDEX,
        });
    }
    let a = (packet.sigma * packet.p0).powi(2);
    let (ln_gamma_abs, _) = gamma_neg_half_log(n);
    let ln = -(2.0 * PI.sqrt()).ln() - 2.0 * n as f64 * (2.0 * packet.sigma).ln()
        + ln_gamma_abs
        + ln_factorial(2 * n + 1)
        + laguerre_half_ln(n, a);
    Ok(ln.exp())
}

/// Default upper limit for the cross-check integral. The integrand peaks
/// near `sqrt(n+1)/sigma + p0` and dies as a Gaussian past it, so ten more
/// widths leave a tail far below any tolerance in use.
pub fn oracle_p_max(packet: &GaussianPacket, n: u32) -> f64 {
    (n as f64 + 1.0) / packet.sigma + packet.p0 + 10.0 / packet.sigma
}

/// `<p^{2n}>` by direct adaptive quadrature of the defining integral.
pub fn moment_oracle(packet: &GaussianPacket, n: u32, rel_tol: f64) -> Result<f64, MomentError> {
    moment_oracle_with_p_max(packet, n, rel_tol, oracle_p_max(packet, n))
}

/// Cross-check quadrature with an explicit upper limit, exposed so callers
/// can verify the default window loses nothing.
pub fn moment_oracle_with_p_max(
    packet: &GaussianPacket,
    n: u32,
    rel_tol: f64,
    p_max: f64,
) -> Result<f64, MomentError> {
    if n > MAX_MOMENT_INDEX {
        return Err(MomentError::IndexOutOfRange {
            n,
            max: MAX_MOMENT_INDEX,
        });
    }
    if !(rel_tol.is_finite() && rel_tol > 0.0) {
        return Err(MomentError::BadTolerance(rel_tol));
    }
    let s2 = packet.sigma * packet.sigma;
    let p0 = packet.p0;
    let pow = (2 * n + 2) as f64;
    // the sinh kernel is merged with the Gaussian before exponentiating:
    // e^{-s2 p^2 - s2 p0^2} sinh(2 s2 p p0) would overflow on its own
    let f = move |p: f64| -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        let lp = p.ln();
        let y = 2.0 * s2 * p * p0;
        if y < 1e-8 {
            2.0 * (pow * lp - s2 * (p * p + p0 * p0)).exp()
        } else {
            let e1 = (pow * lp - s2 * (p - p0) * (p - p0)).exp();
            let e2 = (pow * lp - s2 * (p + p0) * (p + p0)).exp();
            (e1 - e2) / y
        }
    };
    let prefactor = 2.0 * packet.sigma.powi(3) / PI.sqrt();
    match adaptive_integrate(&f, 0.0, p_max, rel_tol, 0.0, ORACLE_PANEL_BUDGET) {
        Ok((value, _err)) => Ok(prefactor * value),
        Err(fail) => Err(MomentError::OracleDidNotConverge {
            best: prefactor * fail.best,
            achieved: prefactor * fail.achieved,
            requested: prefactor * fail.requested,
        }),
    }
}

/// Closed form and oracle side by side for `n = 0..=n_max`.
pub fn moment_table(
    packet: &GaussianPacket,
    n_max: u32,
    oracle_rel_tol: f64,
) -> Result<Vec<MomentRow>, MomentError> {
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let closed_form = moment_closed_form(packet, n)?;
        let oracle = moment_oracle(packet, n, oracle_rel_tol)?;
        let scale = closed_form.abs().max(oracle.abs()).max(f64::MIN_POSITIVE);
        rows.push(MomentRow {
            n,
            closed_form,
            oracle,
            rel_discrepancy: (closed_form - oracle).abs() / scale,
        });
    }
    Ok(rows)
}
