//! The operator's spectrum on momentum eigenstates and on a particle in a
//! box.
//!
//! A plane wave of momentum `p` is an eigenstate with eigenvalue
//! `t sqrt(1 - (p/m)^2)`: the proper distance a classical particle of that
//! momentum covers in coordinate time `t`. Momenta at or beyond the mass
//! leave the real spectrum, so they are domain errors rather than NaNs.
//! In a box of length `L` the momenta are quantized at `p_n = n pi / L`
//! and only the finite prefix with `p_n < m` has real eigenvalues.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectraError {
    /// `p >= mass`: the state moves at or beyond light speed and the
    /// eigenvalue leaves the real spectrum.
    SuperluminalMomentum {
        p: f64,
        mass: f64,
    },
    NegativeMomentum(f64),
    NonPositiveMass(f64),
    NonPositiveLength(f64),
    NegativeTime(f64),
    NonFinite(&'static str),
}

impl fmt::Display for SpectraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectraError::SuperluminalMomentum { p, mass } => {
                write!(
                    f,
                    "momentum {p} is not below the mass {mass}; the eigenvalue is not real"
                )
            }
            SpectraError::NegativeMomentum(p) => {
                write!(f, "momentum must be nonnegative, got {p}")
            }
            SpectraError::NonPositiveMass(m) => write!(f, "mass must be positive, got {m}"),
            SpectraError::NonPositiveLength(l) => {
                write!(f, "box length must be positive, got {l}")
            }
            SpectraError::NegativeTime(t) => {
                write!(f, "elapsed time must be nonnegative, got {t}")
            }
            SpectraError::NonFinite(what) => write!(f, "{what} must be finite"),
        }
    }
}

impl std::error::Error for SpectraError {}

/// One quantized level of the boxed particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxLevel {
    pub n: u32,
    /// Quantized momentum `n pi / L`.
    pub p_n: f64,
    /// Distance eigenvalue, present only while `p_n < mass`.
    pub s_eigenvalue: Option<f64>,
}

impl BoxLevel {
    pub fn evaluable(&self) -> bool {
        self.s_eigenvalue.is_some()
    }
}

fn check_mass_time(mass: f64, t: f64) -> Result<(), SpectraError> {
    if !mass.is_finite() {
        return Err(SpectraError::NonFinite("mass"));
    }
    if mass <= 0.0 {
        return Err(SpectraError::NonPositiveMass(mass));
    }
    if !t.is_finite() {
        return Err(SpectraError::NonFinite("elapsed time"));
    }
    if t < 0.0 {
        return Err(SpectraError::NegativeTime(t));
    }
    Ok(())
}

/// Eigenvalue on the plane wave of momentum `p`.
pub fn planewave_eigenvalue(p: f64, mass: f64, t: f64) -> Result<f64, SpectraError> {
    check_mass_time(mass, t)?;
    if !p.is_finite() {
        return Err(SpectraError::NonFinite("momentum"));
    }
    if p < 0.0 {
        return Err(SpectraError::NegativeMomentum(p));
    }
    if p >= mass {
        return Err(SpectraError::SuperluminalMomentum { p, mass });
    }
    let ratio = p / mass;
    Ok(t * (1.0 - ratio * ratio).sqrt())
}

/// Levels `n = 1..=n_max` of a particle in a box of length `box_length`.
/// Levels past the subluminal prefix keep their momentum but carry no
/// eigenvalue.
pub fn box_spectrum(
    box_length: f64,
    mass: f64,
    t: f64,
    n_max: u32,
) -> Result<Vec<BoxLevel>, SpectraError> {
    check_mass_time(mass, t)?;
    if !box_length.is_finite() {
        return Err(SpectraError::NonFinite("box length"));
    }
    if box_length <= 0.0 {
        return Err(SpectraError::NonPositiveLength(box_length));
    }
    let mut levels = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let p_n = n as f64 * std::f64::consts::PI / box_length;
        let s_eigenvalue = planewave_eigenvalue(p_n, mass, t).ok();
        levels.push(BoxLevel {
            n,
            p_n,
            s_eigenvalue,
        });
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn assert_rel(got: f64, want: f64, tol: f64) {
        let denom = want.abs().max(f64::MIN_POSITIVE);
        assert!(
            (got - want).abs() / denom <= tol,
            "got {got:e}, want {want:e}"
        );
    }

    #[test]
    fn planewave_reference_values() {
        assert_rel(planewave_eigenvalue(0.6, 1.0, 1.0).unwrap(), 0.8, 1e-15);
        assert_rel(planewave_eigenvalue(1.2, 2.0, 3.0).unwrap(), 2.4, 1e-15);
        assert_eq!(planewave_eigenvalue(0.0, 1.0, 5.0).unwrap(), 5.0);
        assert_eq!(planewave_eigenvalue(0.5, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn planewave_domain_errors() {
        assert!(matches!(
            planewave_eigenvalue(1.0, 1.0, 1.0),
            Err(SpectraError::SuperluminalMomentum { .. })
        ));
        assert!(matches!(
            planewave_eigenvalue(1.5, 1.0, 1.0),
            Err(SpectraError::SuperluminalMomentum { .. })
        ));
        assert!(matches!(
            planewave_eigenvalue(-0.1, 1.0, 1.0),
            Err(SpectraError::NegativeMomentum(_))
        ));
        assert!(matches!(
            planewave_eigenvalue(0.5, 0.0, 1.0),
            Err(SpectraError::NonPositiveMass(_))
        ));
        assert!(matches!(
            planewave_eigenvalue(0.5, 1.0, -1.0),
            Err(SpectraError::NegativeTime(_))
        ));
    }

    #[test]
    fn box_levels_quantize_and_cut_off() {
        let levels = box_spectrum(10.0, 1.0, 1.0, 6).unwrap();
        assert_eq!(levels.len(), 6);
        for (i, level) in levels.iter().enumerate() {
            assert_eq!(level.n as usize, i + 1);
            assert_rel(level.p_n, (i + 1) as f64 * PI / 10.0, 1e-15);
        }
        // momenta straddle the mass between n = 3 and n = 4
        assert!(levels[2].p_n < 1.0 && levels[3].p_n > 1.0);
        assert_eq!(
            levels.iter().filter(|l| l.evaluable()).count(),
            3,
            "evaluable prefix"
        );
        for level in &levels[..3] {
            let want = (1.0 - level.p_n * level.p_n).sqrt();
            assert_rel(level.s_eigenvalue.unwrap(), want, 1e-15);
        }
        assert!(levels[3..].iter().all(|l| l.s_eigenvalue.is_none()));
    }

    #[test]
    fn box_eigenvalues_fall_with_growing_gaps() {
        let levels = box_spectrum(10.0, 1.0, 1.0, 3).unwrap();
        let s: Vec<f64> = levels.iter().map(|l| l.s_eigenvalue.unwrap()).collect();
        assert!(s[0] > s[1] && s[1] > s[2]);
        assert!((s[1] - s[2]) > (s[0] - s[1]), "level spacing accelerates");
    }

    #[test]
    fn box_time_scaling_is_linear() {
        let a = box_spectrum(10.0, 1.0, 1.0, 5).unwrap();
        let b = box_spectrum(10.0, 1.0, 2.0, 5).unwrap();
        for (la, lb) in a.iter().zip(&b) {
            match (la.s_eigenvalue, lb.s_eigenvalue) {
                (Some(sa), Some(sb)) => assert_rel(sb, 2.0 * sa, 1e-15),
                (None, None) => {}
                other => panic!("prefix mismatch: {other:?}"),
            }
        }
    }

    #[test]
    fn box_domain_errors() {
        assert!(matches!(
            box_spectrum(0.0, 1.0, 1.0, 5),
            Err(SpectraError::NonPositiveLength(_))
        ));
        assert!(matches!(
            box_spectrum(10.0, -1.0, 1.0, 5),
            Err(SpectraError::NonPositiveMass(_))
        ));
        assert!(box_spectrum(10.0, 1.0, 1.0, 0).unwrap().is_empty());
    }
}
