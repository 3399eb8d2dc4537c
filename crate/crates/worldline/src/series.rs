//! Asymptotic expansion of the expected distance in powers of the spread
//! parameter `x`.
//!
//! Expanding the square root in the operator eigenvalue binomially and
//! taking moments term by term gives a series whose coefficients grow
//! factorially: it diverges for every `x > 0`. It is still useful the way
//! asymptotic series usually are. The terms first shrink, pass through a
//! minimal magnitude near `n ~ 1/x`, and only then blow up; truncating at
//! the minimal term approximates the true expectation with an error on the
//! order of that term. The report produced here keeps the whole term
//! window so callers can see the turnaround rather than trust it.
//!
//! Terms are assembled in log space from the same gamma and Laguerre
//! factors the moment formula uses. Every term past the zeroth is
//! negative; the zeroth is `+t`.

use crate::specfun::{gamma_pos_half_log, laguerre_half_ln};
use std::f64::consts::PI;
use std::fmt;

/// Largest expansion order. Laguerre and gamma factors stay accurate well
/// past this; it is a sanity bound, not a float limit.
pub const MAX_SERIES_INDEX: u32 = 80;

/// exp overflows just past this; a term this large has long left the
/// useful window anyway.
const LN_OVERFLOW_GUARD: f64 = 709.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesError {
    DomainX(f64),
    DomainBeta(f64),
    NegativeTime(f64),
    BadWindow { n_max: u32, max: u32 },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::DomainX(x) => write!(f, "x must be positive and finite, got {x}"),
            SeriesError::DomainBeta(b) => write!(f, "beta must be in [0, 1), got {b}"),
            SeriesError::NegativeTime(t) => {
                write!(f, "elapsed time must be nonnegative and finite, got {t}")
            }
            SeriesError::BadWindow { n_max, max } => {
                write!(f, "term window must cover 1..={max}, got {n_max}")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Full diagnostic record of one expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    /// Signed terms, index 0 first. May stop early on overflow.
    pub terms: Vec<f64>,
    /// Running partial sums, same length as `terms`.
    pub partial_sums: Vec<f64>,
    /// Index of the first term of minimal magnitude.
    pub min_term_index: usize,
    /// Signed value of that term.
    pub min_term_value: f64,
    /// Partial sum through the minimal term: the estimate the series
    /// actually offers.
    pub truncated_sum: f64,
    /// First index whose term grew in magnitude over its predecessor.
    /// `None` when the window ends before the divergent tail shows.
    pub divergent_after: Option<usize>,
    /// `t sqrt(1 - beta^2)` for comparison.
    pub classical_ref: f64,
    /// Set when a term left f64 range and the window stops early.
    pub truncated_by_overflow: bool,
}

/// Proper distance covered by the classical particle: `t sqrt(1 - beta^2)`.
pub fn classical_distance(beta: f64, t: f64) -> f64 {
    t * (1.0 - beta * beta).sqrt()
}

/// Terms and truncation diagnostics of the expansion through order
/// `n_max`.
pub fn expansion_report(
    x: f64,
    beta: f64,
    t: f64,
    n_max: u32,
) -> Result<SeriesReport, SeriesError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(SeriesError::DomainX(x));
    }
    if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
        return Err(SeriesError::DomainBeta(beta));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(SeriesError::NegativeTime(t));
    }
    if !(1..=MAX_SERIES_INDEX).contains(&n_max) {
        return Err(SeriesError::BadWindow {
            n_max,
            max: MAX_SERIES_INDEX,
        });
    }

    let mut terms = Vec::with_capacity(n_max as usize + 1);
    terms.push(t);
    let mut truncated_by_overflow = false;
    if t > 0.0 {
        let a = beta * beta / x;
        let ln_t = t.ln();
        let ln_x = x.ln();
        let ln_norm = (2.0 * PI.sqrt()).ln();
        for n in 1..=n_max {
            let (ln_gamma, _) = gamma_pos_half_log(n);
            let ln_term = ln_t - ln_norm + ln_gamma + n as f64 * ln_x + laguerre_half_ln(n, a);
            if ln_term > LN_OVERFLOW_GUARD {
                truncated_by_overflow = true;
                break;
            }
            terms.push(-ln_term.exp());
        }
    } else {
        terms.resize(n_max as usize + 1, 0.0);
    }

    let mut partial_sums = Vec::with_capacity(terms.len());
    let mut acc = 0.0f64;
    for &term in &terms {
        acc += term;
        partial_sums.push(acc);
    }

    let mut min_term_index = 0usize;
    for (k, term) in terms.iter().enumerate() {
        if term.abs() < terms[min_term_index].abs() {
            min_term_index = k;
        }
    }

    let divergent_after = (1..terms.len()).find(|&k| terms[k].abs() > terms[k - 1].abs());

    Ok(SeriesReport {
        min_term_value: terms[min_term_index],
        truncated_sum: partial_sums[min_term_index],
        min_term_index,
        divergent_after,
        classical_ref: classical_distance(beta, t),
        truncated_by_overflow,
        terms,
        partial_sums,
    })
}

/// Magnitude ratios of neighboring terms, `|t_{k+1}| / |t_k|`. Ratios
/// below one mean the series still looks convergent at that order; the
/// divergent tail shows as ratios climbing through one. Meaningful for
/// `t > 0` (a zero-time report has all-zero terms).
pub fn term_ratios(report: &SeriesReport) -> Vec<f64> {
    report
        .terms
        .windows(2)
        .map(|w| (w[1] / w[0]).abs())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_rel(got: f64, want: f64, tol: f64) {
        let denom = want.abs().max(f64::MIN_POSITIVE);
        assert!(
            (got - want).abs() / denom <= tol,
            "got {got:.17e}, want {want:.17e}, rel err {:e}",
            (got - want).abs() / denom
        );
    }

    #[test]
    fn leading_terms_in_the_flat_regime() {
        let r = expansion_report(1e-6, 0.0, 1.0, 6).unwrap();
        assert_eq!(r.terms[0], 1.0);
        assert_rel(r.terms[1], -7.5e-7, 1e-12);
        assert_rel(r.terms[2], -4.6875e-13, 1e-12);
    }

    #[test]
    fn moderate_spread_reference_window() {
        let r = expansion_report(0.1, 0.5, 1.0, 9).unwrap();
        let want = [
            1.0,
            -0.2,
            -0.028125,
            -0.01,
            -0.0053271484375,
            -0.0036873046875,
            -0.0031025628662109381,
            -0.0030529431152343757,
            -0.0034250859704017649,
            -0.0043028507246971144,
        ];
        assert_eq!(r.terms.len(), want.len());
        for (got, want) in r.terms.iter().zip(want) {
            assert_rel(*got, want, 1e-12);
        }
        assert_eq!(r.min_term_index, 7);
        assert_rel(r.min_term_value, -0.0030529431152343757, 1e-12);
        assert_rel(r.truncated_sum, 0.74670504089355467863, 1e-12);
        assert_eq!(r.divergent_after, Some(8));
        assert!(!r.truncated_by_overflow);
        assert_rel(r.classical_ref, 0.8660254037844386468, 1e-15);
    }

    #[test]
    fn strong_spread_diverges_immediately() {
        let r = expansion_report(1.0, 0.5, 1.0, 6).unwrap();
        let want = [1.0, -0.875, -0.6328125, -1.2724609375, -4.087066650390625];
        for (got, want) in r.terms.iter().take(want.len()).zip(want) {
            assert_rel(*got, want, 1e-12);
        }
        assert_eq!(r.min_term_index, 2);
        assert_rel(r.truncated_sum, -0.5078125, 1e-12);
        assert_eq!(r.divergent_after, Some(3));
    }

    #[test]
    fn near_classical_truncation_error_is_tiny() {
        let r = expansion_report(1e-8, 0.1, 1.0, 40).unwrap();
        assert_eq!(r.divergent_after, None);
        assert_eq!(r.min_term_index, 40);
        let gap = r.truncated_sum - r.classical_ref;
        assert!(gap < 0.0, "truncation sits below the classical value");
        assert!(gap.abs() < 2e-8, "gap {gap:e}");
        assert_rel(r.truncated_sum, 0.99498742954345654837, 1e-12);
    }

    #[test]
    fn ratios_flag_the_divergent_tail() {
        let r = expansion_report(1.0, 0.5, 1.0, 6).unwrap();
        let ratios = term_ratios(&r);
        assert_rel(ratios[0], 0.875, 1e-12);
        assert_rel(ratios[1], 0.6328125 / 0.875, 1e-12);
        assert!(ratios[2] > 1.0);
        for w in ratios[2..].windows(2) {
            assert!(w[1] > w[0], "tail ratios must grow");
        }

        let r = expansion_report(1e-8, 0.1, 1.0, 40).unwrap();
        for ratio in term_ratios(&r).iter().take(6) {
            assert!(*ratio < 1.0 && *ratio > 0.0);
        }
    }

    #[test]
    fn time_scales_every_term() {
        let a = expansion_report(0.1, 0.5, 1.0, 8).unwrap();
        let b = expansion_report(0.1, 0.5, 2.5, 8).unwrap();
        for (ta, tb) in a.terms.iter().zip(&b.terms) {
            assert_rel(*tb, 2.5 * ta, 1e-13);
        }
        assert_rel(b.classical_ref, 2.5 * a.classical_ref, 1e-15);
    }

    #[test]
    fn zero_time_degenerates_cleanly() {
        let r = expansion_report(0.1, 0.5, 0.0, 5).unwrap();
        assert_eq!(r.terms, vec![0.0; 6]);
        assert_eq!(r.truncated_sum, 0.0);
        assert_eq!(r.classical_ref, 0.0);
    }

    #[test]
    fn classical_reference_values() {
        assert_eq!(classical_distance(0.0, 1.0), 1.0);
        assert_rel(classical_distance(0.1, 1.0), 0.99498743710661995473, 1e-15);
        assert_rel(
            classical_distance(0.999, 2.0),
            0.089420355624432628399,
            1e-14,
        );
        assert_rel(classical_distance(0.8, 1.0), 0.6, 1e-15);
    }

    #[test]
    fn overflow_truncates_and_is_flagged() {
        let r = expansion_report(1e305, 0.5, 1.0, 10).unwrap();
        assert!(r.truncated_by_overflow);
        assert_eq!(r.terms.len(), 2);
        assert!(r.terms[1].is_finite());
        assert!(r.partial_sums[1].is_finite());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            expansion_report(0.0, 0.5, 1.0, 5),
            Err(SeriesError::DomainX(_))
        ));
        assert!(matches!(
            expansion_report(-1.0, 0.5, 1.0, 5),
            Err(SeriesError::DomainX(_))
        ));
        assert!(matches!(
            expansion_report(0.1, 1.0, 1.0, 5),
            Err(SeriesError::DomainBeta(_))
        ));
        assert!(matches!(
            expansion_report(0.1, -0.1, 1.0, 5),
            Err(SeriesError::DomainBeta(_))
        ));
        assert!(matches!(
            expansion_report(0.1, 0.5, -1.0, 5),
            Err(SeriesError::NegativeTime(_))
        ));
        assert!(matches!(
            expansion_report(0.1, 0.5, 1.0, 0),
            Err(SeriesError::BadWindow { .. })
        ));
        assert!(matches!(
            expansion_report(0.1, 0.5, 1.0, 81),
            Err(SeriesError::BadWindow { .. })
        ));
    }
}
