//! The general-L quantization function as a cutoff-truncated double sum,
//!
//!   Z_L(x; λ) = Σ_{l1,l2 ≤ λ} (2l1+1)(2l2+1) (l1 l2 L; 0 0 0)² / (l1(l1+1) + l2(l2+1) − x)
//!               − ½ log(λ(λ+1)),
//!
//! and its λ → ∞ limit by polynomial extrapolation in 1/λ.
//!
//! Far below threshold (|x| comparable to λ²) the ladder no longer resolves the
//! tail, but there the pair is a tightly bound dimer whose centre of mass rotates
//! with energy L(L+1)/2 in x-units. The band function then follows the L = 0
//! closed form at the shifted energy, with a short series in n/x, n = L(L+1):
//!
//!   Z_L(x) = Z₀(x − n/2) − n/(24x²) + (n/10 − n²/24)/x³ + O(n³/x⁴).

use serde::{Deserialize, Serialize};

use super::closed::z0;
use crate::angular::threej_zero_m_squared;
use crate::error::{Error, Result};

/// Relative distance to a non-interacting energy below which `x` counts as a pole.
pub const POLE_GUARD: f64 = 1e-13;

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Adds the pairs whose larger angular momentum is exactly `shell`.
fn add_shell(band: u32, x: f64, shell: u32, acc: &mut CompensatedSum) -> Result<()> {
    let lo = shell.abs_diff(band);
    let hi = (shell + band).min(shell);
    // l1 + l2 + L even and the triangle rule: l2 runs over lo, lo+2, ..., hi.
    let mut l2 = lo;
    while l2 <= hi {
        let energy = (shell * (shell + 1) + l2 * (l2 + 1)) as f64;
        let denom = energy - x;
        if denom.abs() <= POLE_GUARD * energy.max(1.0) {
            return Err(Error::Pole { at: x });
        }
        let weight = (2 * shell + 1) as f64 * (2 * l2 + 1) as f64
            * threej_zero_m_squared(shell, l2, band)?;
        let multiplicity = if l2 == shell { 1.0 } else { 2.0 };
        acc.add(multiplicity * weight / denom);
        l2 += 2;
    }
    Ok(())
}

/// Truncated sum with cutoff l_i ≤ `lambda_max`, i.e. (ΛR)² = λ(λ+1).
pub fn z_sum(band: u32, x: f64, lambda_max: u32) -> Result<f64> {
    Ok(z_sum_ladder(band, x, &[lambda_max])?[0])
}

/// Truncated sums at every cutoff of an ascending ladder, computed in one pass
/// over angular-momentum shells.
pub fn z_sum_ladder(band: u32, x: f64, ladder: &[u32]) -> Result<Vec<f64>> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("cutoff ladder must be strictly ascending".into()));
    }
    if let Some(&first) = ladder.first() {
        if first < band + 1 {
            return Err(Error::Domain(format!(
                "cutoff λ = {first} must be at least L + 1 = {}",
                band + 1
            )));
        }
    }
    let mut out = Vec::with_capacity(ladder.len());
    let mut acc = CompensatedSum::default();
    let mut shell = 0u32;
    for &lambda in ladder {
        while shell <= lambda {
            add_shell(band, x, shell, &mut acc)?;
            shell += 1;
        }
        let lf = lambda as f64;
        out.push(acc.value() - 0.5 * (lf * (lf + 1.0)).ln());
    }
    Ok(out)
}

/// Extrapolates samples f(h_i) to h = 0 with the interpolating polynomial (Neville).
pub fn neville_at_zero(h: &[f64], f: &[f64]) -> f64 {
    let mut p = f.to_vec();
    let n = h.len();
    for k in 1..n {
        for i in (k..n).rev() {
            p[i] = (h[i] * p[i - 1] - h[i - k] * p[i]) / (h[i] - h[i - k]);
        }
    }
    p[n - 1]
}

/// Minimum ratio of the coarsest cutoff to √|x|.
const LADDER_RESOLUTION: f64 = 4.0;

/// Cutoff ladder and acceptance tolerance for the λ → ∞ extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub ladder: Vec<u32>,
    /// Target accuracy; the full-ladder estimate and the estimate that drops the
    /// coarsest rung must agree within ten times this.
    pub tolerance: f64,
}

impl Default for Extrapolation {
    fn default() -> Self {
        Self { ladder: vec![64, 128, 256, 512, 1024, 2048], tolerance: 1e-9 }
    }
}

impl Extrapolation {
    /// A second, independent ladder used for self-consistency checks.
    pub fn alternate() -> Self {
        Self { ladder: vec![48, 96, 192, 384, 768, 1536], tolerance: 1e-9 }
    }
}

/// Λ → ∞ limit of [`z_sum`] with the default ladder.
pub fn z_general(band: u32, x: f64) -> Result<f64> {
    z_general_with(band, x, &Extrapolation::default())
}

pub fn z_general_with(band: u32, x: f64, extrapolation: &Extrapolation) -> Result<f64> {
    if x < -dimer_threshold(band, extrapolation.tolerance) {
        return z_dimer_series(band, x);
    }
    let base = &extrapolation.ladder;
    if base.len() < 3 {
        return Err(Error::Domain("extrapolation needs at least three cutoffs".into()));
    }
    // The 1/λ expansion is in powers of √|x|/λ; keep the coarsest rung well above √|x|.
    let scale = ((LADDER_RESOLUTION * x.abs().sqrt() / base[0] as f64).ceil() as u32).max(1);
    let ladder: Vec<u32> = base.iter().map(|&l| l * scale).collect();
    let values = z_sum_ladder(band, x, &ladder)?;
    let h: Vec<f64> = ladder.iter().map(|&l| 1.0 / l as f64).collect();
    let fine = neville_at_zero(&h, &values);
    let coarse = neville_at_zero(&h[1..], &values[1..]);
    let tolerance = 10.0 * extrapolation.tolerance;
    if (fine - coarse).abs() > tolerance || !fine.is_finite() {
        return Err(Error::NonConvergence { coarse, fine, tolerance });
    }
    Ok(fine)
}

/// |x| beyond which the truncated dimer series is accurate to `tolerance`.
fn dimer_threshold(band: u32, tolerance: f64) -> f64 {
    let n = (band * (band + 1)) as f64;
    // the next term is bounded by n³/(24 x⁴) on all bands checked
    f64::max(400.0, (n.powi(3) / (24.0 * tolerance)).powf(0.25))
}

/// Large-|x| expansion of the band function about the rotating dimer.
pub fn z_dimer_series(band: u32, x: f64) -> Result<f64> {
    let n = (band * (band + 1)) as f64;
    let inv = 1.0 / x;
    Ok(z0(x - 0.5 * n)? - n / 24.0 * inv * inv + (n / 10.0 - n * n / 24.0) * inv * inv * inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::threej_zero_m;
    use crate::quantization::closed::z_closed;

    /// Literal double loop over all (l1, l2) ≤ λ with the 3j symbol evaluated directly.
    fn brute_force(band: u32, x: f64, lambda: u32) -> f64 {
        let mut s = 0.0;
        for l1 in 0..=lambda {
            for l2 in 0..=lambda {
                let w = threej_zero_m(l1, l2, band).unwrap();
                if w != 0.0 {
                    let e = (l1 * (l1 + 1) + l2 * (l2 + 1)) as f64;
                    s += (2 * l1 + 1) as f64 * (2 * l2 + 1) as f64 * w * w / (e - x);
                }
            }
        }
        let l = lambda as f64;
        s - 0.5 * (l * (l + 1.0)).ln()
    }

    #[test]
    fn two_term_sum() {
        let want = 0.5 + 3.0 / 6.0 - 0.5 * 2f64.ln();
        assert!((z_sum(0, -2.0, 1).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.65343).abs() < 1e-5);
    }

    #[test]
    fn l1_hand_enumeration() {
        // λ = 2: pairs (0,1), (1,0), (1,2), (2,1) with 3j² = 1/3, 1/3, 2/15, 2/15
        let x = 1.0;
        let want = 2.0 * (1.0 * 3.0 / 3.0) / (2.0 - x)
            + 2.0 * (3.0 * 5.0 * 2.0 / 15.0) / (8.0 - x)
            - 0.5 * 6f64.ln();
        assert!((z_sum(1, x, 2).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn shells_match_brute_force() {
        for band in 0..5 {
            for x in [-3.3, 0.7, 9.1] {
                let a = z_sum(band, x, 30).unwrap();
                let b = brute_force(band, x, 30);
                assert!((a - b).abs() < 1e-12, "L={band} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn ladder_agrees_with_single_cutoffs() {
        let lad = z_sum_ladder(2, 3.3, &[5, 17, 40]).unwrap();
        for (v, l) in lad.iter().zip([5, 17, 40]) {
            assert_eq!(*v, z_sum(2, 3.3, l).unwrap());
        }
    }

    #[test]
    fn extrapolation_recovers_closed_forms() {
        for (band, x) in [(0u32, 1.0), (1, 1.0), (2, 2.0), (0, -2.695_194_163_111_27)] {
            let g = z_general(band, x).unwrap();
            let c = z_closed(band, x).unwrap();
            assert!((g - c).abs() < 1e-9, "L={band} x={x}: {g} vs {c}");
        }
    }

    #[test]
    fn two_ladders_agree_for_l3() {
        let a = z_general(3, 5.0).unwrap();
        let b = z_general_with(3, 5.0, &Extrapolation::alternate()).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn errors() {
        assert!(matches!(z_sum(0, 4.0, 10), Err(Error::Pole { .. })));
        // pole beyond the cutoff does not matter
        assert!(z_sum(0, 40.0, 3).is_ok());
        assert!(matches!(z_sum(2, 1.0, 2), Err(Error::Domain(_))));
        assert!(matches!(z_general(0, 12.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn dimer_series_matches_closed_forms() {
        for band in 1..3 {
            for x in [-400.0, -3e3, -1e5, -1e9] {
                let a = z_dimer_series(band, x).unwrap();
                let b = z_closed(band, x).unwrap();
                let n = (band * (band + 1)) as f64;
                let bound = n.powi(3) / (24.0 * x.powi(4)) + 1e-13;
                assert!((a - b).abs() < bound, "L={band} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn dimer_series_joins_the_sum() {
        for band in [3u32, 5, 10] {
            let x = -dimer_threshold(band, 1e-9);
            let series = z_dimer_series(band, x).unwrap();
            let sum = z_general(band, x * (1.0 - 1e-12)).unwrap();
            assert!((series - sum).abs() < 1e-8, "L={band}: {series} vs {sum}");
        }
    }

    #[test]
    fn large_energies_use_longer_ladders() {
        for x in [-3e3, 900.5, 5e3 + 0.5] {
            let g = z_general(0, x).unwrap();
            let c = z_closed(0, x).unwrap();
            assert!((g - c).abs() < 1e-9, "x={x}: {g} vs {c}");
        }
    }

    #[test]
    fn neville_is_exact_for_polynomials() {
        let h = [0.5, 0.25, 0.125, 0.0625];
        let f: Vec<f64> = h.iter().map(|h| 3.0 - 2.0 * h + 0.5 * h * h * h).collect();
        assert!((neville_at_zero(&h, &f) - 3.0).abs() < 1e-14);
    }
}
