//! Comparison geometries: two particles in a 2-D harmonic trap and on a square
//! torus, with the same contact interaction.
//!
//! Both conditions depend on the pair energy only through the relative motion,
//! so a centre-of-mass excitation translates the whole curve. The sphere does
//! not have this property; see the tests.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantization::{find_root, CompensatedSum, DEFAULT_TOLERANCE};
use crate::specfun::{digamma, EULER_GAMMA};

/// log(a/b) for the trapped pair, −½ ψ(½ − x/2) with x = E/ω.
pub fn ho_condition(x: f64) -> Result<f64> {
    let v = digamma(0.5 - 0.5 * x).map_err(|e| match e {
        Error::Pole { .. } => Error::Pole { at: x },
        other => other,
    })?;
    Ok(-0.5 * v)
}

/// First `count` poles of the oscillator condition: 1, 3, 5, ...
pub fn ho_poles(count: usize) -> Vec<f64> {
    (0..count).map(|k| (2 * k + 1) as f64).collect()
}

/// Circular lattice cutoff for the torus sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusSumSpec {
    /// Lattice-norm bound Λ, |n| ≤ Λ.
    pub cutoff: f64,
    /// Return the infinite-cutoff limit instead of the truncated value.
    pub extrapolate: bool,
}

impl Default for TorusSumSpec {
    fn default() -> Self {
        Self { cutoff: 800.0, extrapolate: true }
    }
}

/// Σ' 1/|n|² over 0 < |n| ≤ Λ minus 2π log Λ, as Λ → ∞.
pub const TORUS_LATTICE_CONSTANT: f64 = 2.584_981_759_579_257;

/// Limit-estimates at Λ/2 and Λ must agree within this.
pub const TORUS_CONSISTENCY: f64 = 1e-8;

/// The n-sums used by [`torus_s2`], accumulated over one octant of ℤ².
#[derive(Debug, Clone, Copy)]
struct LatticeSums {
    /// Σ 1/(n² − x) including n = 0.
    raw: f64,
    /// Σ' x / (n² (n² − x)), convergent.
    subtracted: f64,
}

fn lattice_sums(x: f64, cutoffs: &[f64]) -> Result<Vec<LatticeSums>> {
    check_torus_pole(x)?;
    let top = cutoffs.iter().copied().fold(0.0, f64::max);
    let mut raw = vec![CompensatedSum::default(); cutoffs.len()];
    let mut sub = vec![CompensatedSum::default(); cutoffs.len()];
    let squared: Vec<f64> = cutoffs.iter().map(|c| c * c).collect();
    let a_max = top.floor() as i64;
    // Octant 0 ≤ b ≤ a, weighted by the size of each point's symmetry orbit.
    for a in 0..=a_max {
        for b in 0..=a {
            let norm = (a * a + b * b) as f64;
            if norm > top * top {
                break;
            }
            let weight = match (a, b) {
                (0, 0) => 1.0,
                (_, 0) => 4.0,
                _ if a == b => 4.0,
                _ => 8.0,
            };
            let r = weight / (norm - x);
            let s = if norm > 0.0 { weight * x / (norm * (norm - x)) } else { 0.0 };
            for (k, c2) in squared.iter().enumerate() {
                if norm <= *c2 {
                    raw[k].add(r);
                    sub[k].add(s);
                }
            }
        }
    }
    Ok(raw
        .iter()
        .zip(&sub)
        .map(|(r, s)| LatticeSums { raw: r.value(), subtracted: s.value() })
        .collect())
}

/// Infinite-cutoff estimate from the sums at cutoff Λ: the n = 0 term, the
/// lattice constant, the convergent remainder and its continuum tail.
fn torus_limit(x: f64, cutoff: f64, sums: &LatticeSums) -> f64 {
    let c2 = cutoff * cutoff;
    let tail = PI * (c2 / (c2 - x)).ln();
    (-1.0 / x + TORUS_LATTICE_CONSTANT + sums.subtracted + tail) / (PI * PI)
}

/// (1/π²) S₂(x) − (2/π) log Λ for the square torus, x = mEL²/(4π²).
///
/// With `extrapolate` the 1/|n|² part is replaced by its exact asymptotic
/// constant and the convergent remainder gets a continuum tail. Lattice-point
/// fluctuations make the raw sum's cutoff dependence irregular, which rules out
/// polynomial extrapolation. The limits from Λ/2 and Λ must agree to
/// [`TORUS_CONSISTENCY`].
pub fn torus_s2(x: f64, spec: &TorusSumSpec) -> Result<f64> {
    if !(spec.cutoff >= 1.0) || !spec.cutoff.is_finite() {
        return Err(Error::Domain(format!("torus cutoff must be ≥ 1, got {}", spec.cutoff)));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    if !spec.extrapolate {
        let s = lattice_sums(x, &[spec.cutoff])?[0];
        return Ok(s.raw / (PI * PI) - 2.0 / PI * spec.cutoff.ln());
    }
    if spec.cutoff * spec.cutoff <= 4.0 * x.abs().max(1.0) {
        return Err(Error::Domain(format!("cutoff {} too small for x = {x}", spec.cutoff)));
    }
    let cutoffs = [0.5 * spec.cutoff, spec.cutoff];
    let sums = lattice_sums(x, &cutoffs)?;
    let coarse = torus_limit(x, cutoffs[0], &sums[0]);
    let fine = torus_limit(x, cutoffs[1], &sums[1]);
    if (fine - coarse).abs() > TORUS_CONSISTENCY {
        return Err(Error::NonConvergence { coarse, fine, tolerance: TORUS_CONSISTENCY });
    }
    Ok(fine)
}

/// Whether k = p² + q² for integers p, q.
pub fn is_sum_of_two_squares(k: u64) -> bool {
    let mut p = 0u64;
    while p * p <= k {
        let rest = k - p * p;
        let q = rest.isqrt();
        if q * q == rest {
            return true;
        }
        p += 1;
    }
    false
}

/// First `count` poles of the torus condition: 0, 1, 2, 4, 5, 8, ...
pub fn torus_poles(count: usize) -> Vec<f64> {
    (0u64..).filter(|&k| is_sum_of_two_squares(k)).take(count).map(|k| k as f64).collect()
}

fn check_torus_pole(x: f64) -> Result<()> {
    let k = x.round();
    if k >= 0.0 && (x - k).abs() <= 1e-12 * k.max(1.0) && is_sum_of_two_squares(k as u64) {
        return Err(Error::Pole { at: x });
    }
    Ok(())
}

/// A comparison geometry whose condition translates under centre-of-mass shifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AnalogGeometry {
    HarmonicOscillator,
    Torus(TorusSumSpec),
}

impl AnalogGeometry {
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Self::HarmonicOscillator => ho_condition(x),
            Self::Torus(spec) => torus_s2(x, spec),
        }
    }

    pub fn poles(&self, count: usize) -> Vec<f64> {
        match self {
            Self::HarmonicOscillator => ho_poles(count),
            Self::Torus(_) => torus_poles(count),
        }
    }
}

/// A comparison condition evaluated at x − x_cm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftedCondition {
    pub geometry: AnalogGeometry,
    pub x_cm: f64,
}

/// The condition with its pair energy raised by a centre-of-mass excitation x_cm.
pub fn cm_shift_curve(geometry: AnalogGeometry, x_cm: f64) -> ShiftedCondition {
    ShiftedCondition { geometry, x_cm }
}

impl ShiftedCondition {
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.geometry.eval(x - self.x_cm).map_err(|e| match e {
            Error::Pole { .. } => Error::Pole { at: x },
            other => other,
        })
    }

    pub fn poles(&self, count: usize) -> Vec<f64> {
        self.geometry.poles(count).into_iter().map(|p| p + self.x_cm).collect()
    }

    /// Root on branch `n` (n = 0 below the first pole) where the condition equals `target`.
    pub fn solve(&self, target: f64, n: usize) -> Result<f64> {
        let p = self.poles(n + 2);
        let f = |x: f64| self.eval(x).map(|v| v - target);
        let fail = |detail: String| Error::BracketFailure { band: 0, branch: n, detail };
        let (mut lo, hi) = if n == 0 {
            (p[0] - 1.0, p[0] - 1e-9 * (p[1] - p[0]))
        } else {
            let gap = p[n] - p[n - 1];
            (p[n - 1] + 1e-9 * gap, p[n] - 1e-9 * gap)
        };
        let fhi = f(hi)?;
        if fhi <= 0.0 {
            return Err(fail(format!("no sign change below the pole at {}", p[n])));
        }
        let mut flo = f(lo)?;
        let mut expansions = 0;
        while flo >= 0.0 {
            if n > 0 || expansions == 60 {
                return Err(fail(format!("no sign change above x = {lo}")));
            }
            lo = p[0] - 2.0 * (p[0] - lo);
            flo = f(lo)?;
            expansions += 1;
        }
        find_root(f, lo, hi, flo, fhi, DEFAULT_TOLERANCE)
    }
}

/// Value of the oscillator condition at x = 0, (γ + 2 ln 2)/2.
pub fn ho_at_origin() -> f64 {
    0.5 * (EULER_GAMMA + 2.0 * std::f64::consts::LN_2)
}
