//! Gamma values at half-integer arguments, binomial coefficients of order
//! one half, and generalized Laguerre polynomials of order one half.
//!
//! These are the only special functions the moment and series formulas
//! need, so they are implemented directly from their recurrences instead
//! of pulling in a general-purpose gamma. Every routine has a logarithmic
//! companion because the downstream formulas multiply values that overflow
//! f64 individually while their product stays representable.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

/// Largest index accepted by the non-logarithmic gamma evaluations.
/// `gamma_neg_half` goes subnormal just past this point and
/// `gamma_pos_half` overflows shortly after; the log companions have no
/// such limit.
pub const MAX_GAMMA_INDEX: u32 = 170;

const LN_FACT_TABLE_LEN: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    /// Index outside the range where the requested value fits in an f64.
    IndexOutOfRange {
        what: &'static str,
        n: u32,
        max: u32,
    },
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::IndexOutOfRange { what, n, max } => {
                write!(f, "{what}: index {n} exceeds representable limit {max}")
            }
        }
    }
}

impl std::error::Error for SpecFunError {}

/// ln(k!) with the first 170 entries built from an exact running product;
/// beyond the table a Stirling tail keeps relative error near machine eps.
pub fn ln_factorial(k: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(LN_FACT_TABLE_LEN);
        v.push(0.0);
        let mut prod = 1.0f64;
        for i in 1..LN_FACT_TABLE_LEN {
            if i <= 170 {
                prod *= i as f64;
                v.push(prod.ln());
            } else {
                v.push(v[i - 1] + (i as f64).ln());
            }
        }
        v
    });
    let k = k as usize;
    if k < LN_FACT_TABLE_LEN {
        table[k]
    } else {
        let n = k as f64;
        (n + 0.5) * n.ln() - n + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * n)
            - 1.0 / (360.0 * n * n * n)
    }
}

/// ln Gamma(m + 1/2) through the duplication identity
/// Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!).
fn ln_gamma_half_offset(m: u32) -> f64 {
    ln_factorial(2 * m) - (m as f64) * 4.0f64.ln() - ln_factorial(m) + 0.5 * PI.ln()
}

/// Gamma(-n - 1/2) by downward recurrence from Gamma(-1/2) = -2 sqrt(pi).
///
/// The values alternate in sign (negative at even `n`) and shrink roughly
/// factorially; past `n = 170` they leave the normal f64 range.
pub fn gamma_neg_half(n: u32) -> Result<f64, SpecFunError> {
    if n > MAX_GAMMA_INDEX {
        return Err(SpecFunError::IndexOutOfRange {
            what: "gamma at -n-1/2",
            n,
            max: MAX_GAMMA_INDEX,
        });
    }
    let mut g = -2.0 * PI.sqrt();
    for k in 1..=n {
        g /= -(k as f64 + 0.5);
    }
    Ok(g)
}

/// (ln |Gamma(-n - 1/2)|, sign) for any index. Uses the reflection value
/// |Gamma(-n - 1/2)| = pi / Gamma(n + 3/2).
pub fn gamma_neg_half_log(n: u32) -> (f64, f64) {
    let ln_abs = PI.ln() - ln_gamma_half_offset(n + 1);
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    (ln_abs, sign)
}

/// Gamma(n - 1/2). Negative only at `n = 0`; overflows for `n > 171`.
pub fn gamma_pos_half(n: u32) -> Result<f64, SpecFunError> {
    if n > MAX_GAMMA_INDEX + 1 {
        return Err(SpecFunError::IndexOutOfRange {
            what: "gamma at n-1/2",
            n,
            max: MAX_GAMMA_INDEX + 1,
        });
    }
    if n == 0 {
        return Ok(-2.0 * PI.sqrt());
    }
    let mut g = PI.sqrt();
    for k in 1..n {
        g *= k as f64 - 0.5;
    }
    Ok(g)
}

/// (ln |Gamma(n - 1/2)|, sign) for any index.
pub fn gamma_pos_half_log(n: u32) -> (f64, f64) {
    if n == 0 {
        ((2.0 * PI.sqrt()).ln(), -1.0)
    } else {
        (ln_gamma_half_offset(n - 1), 1.0)
    }
}

/// Binomial coefficient (1/2 choose n) via the ratio recurrence
/// c_n = c_{n-1} (3/2 - n) / n. Alternates in sign from `n = 2` on and
/// decays like n^{-3/2}, so it never overflows.
pub fn binom_half(n: u32) -> f64 {
    let mut c = 1.0f64;
    for k in 1..=n {
        c *= (1.5 - k as f64) / k as f64;
    }
    c
}

/// Generalized Laguerre polynomial L_n^{1/2}(z) by the three-term
/// recurrence. Stable for z <= 0 where every term is positive; for
/// moderate positive z the mild cancellation costs a few digits at most.
pub fn laguerre_half(n: u32, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0f64;
    let mut cur = 1.5 - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.5 - z) * cur - (kf + 0.5) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// ln L_n^{1/2}(-a) for `a >= 0`, where the polynomial is positive and can
/// exceed f64 range (a = 1e6 at n = 80 is far past 1e308). Runs the same
/// recurrence with periodic rescaling.
pub fn laguerre_half_ln(n: u32, a: f64) -> f64 {
    debug_assert!(a >= 0.0, "negated argument must be nonnegative");
    if n == 0 {
        return 0.0;
    }
    const RESCALE_AT: f64 = 1e280;
    let mut prev = 1.0f64;
    let mut cur = 1.5 + a;
    let mut ln_scale = 0.0f64;
    for k in 1..n {
        let kf = k as f64;
        let mut next = ((2.0 * kf + 1.5 + a) * cur - (kf + 0.5) * prev) / (kf + 1.0);
        if next > RESCALE_AT {
            cur /= RESCALE_AT;
            next /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
        prev = cur;
        cur = next;
    }
    cur.ln() + ln_scale
}
