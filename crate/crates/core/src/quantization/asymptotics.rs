//! Leading-order expansions of the band roots: weak coupling near the
//! non-interacting energies, the deep dimer, and linearization about a zero.

use crate::error::{Error, Result};
use crate::specfun::{trigamma, trigamma_complex, ComplexValue};

const ZETA3: f64 = 1.202_056_903_159_594_3;

/// First-order weak-coupling root near the n-th non-interacting energy.
///
/// L = 0: x = 2n(n+1) − (2n+1)/log(a/R); L = 1: x = 2(n+1)² − 2(n+1)/log(a/R).
pub fn asymptote_noninteracting(band: u32, n: usize, log_a_over_r: f64) -> Result<f64> {
    if log_a_over_r == 0.0 {
        return Err(Error::Domain("weak-coupling expansion needs log(a/R) ≠ 0".into()));
    }
    let n = n as f64;
    match band {
        0 => Ok(2.0 * n * (n + 1.0) - (2.0 * n + 1.0) / log_a_over_r),
        1 => Ok(2.0 * (n + 1.0).powi(2) - 2.0 * (n + 1.0) / log_a_over_r),
        _ => Err(Error::Domain(format!("no weak-coupling expansion for L = {band}"))),
    }
}

/// Exact branch approached by the n-th weak-coupling asymptote.
///
/// For log(a/R) < 0 the lowest branch holds the dimer, so the asymptote that
/// hugs the n-th pole from below lives on branch n + 1.
pub fn asymptote_branch(n: usize, log_a_over_r: f64) -> usize {
    if log_a_over_r < 0.0 {
        n + 1
    } else {
        n
    }
}

/// Deep-dimer root x = −2R²/a².
pub fn dimer_x(a: f64, r: f64) -> Result<f64> {
    if !(a > 0.0 && r > 0.0) {
        return Err(Error::Domain(format!("a and R must be positive, got a = {a}, R = {r}")));
    }
    Ok(-2.0 * (r / a).powi(2))
}

pub(crate) fn dimer_x_from_log(log_a_over_r: f64) -> f64 {
    -2.0 * (-2.0 * log_a_over_r).exp()
}

/// dx/dlog(a/R) of the exact root at a zero x0 of band 0 or 1.
pub fn near_zero_slope(band: u32, x0: f64) -> Result<f64> {
    const SMALL: f64 = 1e-8;
    match band {
        0 => {
            let d = 2.0 * x0 + 1.0;
            if d.abs() < SMALL * SMALL {
                // ψ⁽¹⁾(½ − s/2) − ψ⁽¹⁾(½ + s/2) → 14 ζ(3) s
                return Ok(2.0 / (7.0 * ZETA3));
            }
            if d > 0.0 {
                let s = d.sqrt();
                Ok(4.0 * s / (trigamma(0.5 - 0.5 * s)? - trigamma(0.5 + 0.5 * s)?))
            } else {
                let t = (-d).sqrt();
                Ok(-2.0 * t / trigamma_complex(ComplexValue::new(0.5, 0.5 * t))?.im)
            }
        }
        1 => {
            if x0.abs() < SMALL * SMALL {
                // ψ⁽¹⁾(1 − q) − ψ⁽¹⁾(1 + q) → 4 ζ(3) q
                return Ok(2.0 / ZETA3);
            }
            if x0 > 0.0 {
                let q = (0.5 * x0).sqrt();
                Ok(8.0 * q / (trigamma(1.0 - q)? - trigamma(1.0 + q)?))
            } else {
                let t = (-0.5 * x0).sqrt();
                Ok(-4.0 * t / trigamma_complex(ComplexValue::new(1.0, t))?.im)
            }
        }
        _ => Err(Error::Domain(format!("no near-zero expansion for L = {band}"))),
    }
}

/// Linearized root x0 + slope·log(a/R) about a zero x0.
pub fn expansion_near_zero(band: u32, x0: f64, log_a_over_r: f64) -> Result<f64> {
    Ok(x0 + near_zero_slope(band, x0)? * log_a_over_r)
}
