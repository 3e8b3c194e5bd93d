//! Band evaluators and root finding on the monotone segments between poles.

use serde::{Deserialize, Serialize};

use super::closed::z_closed;
use super::poles::poles;
use super::sum::{z_general_with, Extrapolation};
use crate::error::{Error, Result};

/// Absolute x tolerance used when no other tolerance is requested.
pub const DEFAULT_TOLERANCE: f64 = 1e-13;

/// Pole-adjacent bracket ends sit this fraction of the inter-pole gap away from the pole.
const POLE_OFFSET: f64 = 1e-9;

const MAX_BRACKET_EXPANSIONS: usize = 200;
const MAX_ITERATIONS: usize = 400;

/// How a band's quantization function is evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Method {
    /// Digamma closed form; only L ≤ 2.
    Closed,
    /// Cutoff sum extrapolated to infinite cutoff.
    General(Extrapolation),
}

/// Quantization function of one rotational band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub l: u32,
    pub method: Method,
}

impl Band {
    /// Closed form when available, extrapolated sum otherwise.
    pub fn new(l: u32) -> Self {
        let method = if l <= 2 { Method::Closed } else { Method::General(Extrapolation::default()) };
        Self { l, method }
    }

    pub fn general(l: u32) -> Self {
        Self { l, method: Method::General(Extrapolation::default()) }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match &self.method {
            Method::Closed => z_closed(self.l, x),
            Method::General(e) => z_general_with(self.l, x, e),
        }
    }

    pub fn poles(&self, count: usize) -> Vec<f64> {
        poles(self.l, count)
    }

    /// Open interval (lower, upper) of branch `n`; branch 0 has lower = −∞.
    pub fn branch_interval(&self, n: usize) -> (f64, f64) {
        let p = self.poles(n + 2);
        if n == 0 {
            (f64::NEG_INFINITY, p[0])
        } else {
            (p[n - 1], p[n])
        }
    }

    /// The x on branch `n` where the band function equals `log_a_over_r`.
    pub fn solve(&self, log_a_over_r: f64, n: usize, tolerance: f64) -> Result<f64> {
        if !log_a_over_r.is_finite() {
            return Err(Error::Domain(format!("log(a/R) must be finite, got {log_a_over_r}")));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
        }
        let p = self.poles(n + 2);
        let f = |x: f64| self.eval(x).map(|z| z - log_a_over_r);
        let fail = |detail: String| Error::BracketFailure { band: self.l, branch: n, detail };

        let (mut lo, hi) = if n == 0 {
            let gap = p[1] - p[0];
            let hi = p[0] - POLE_OFFSET * gap;
            let dimer = super::asymptotics::dimer_x_from_log(log_a_over_r);
            (f64::min(1.5 * dimer, p[0] - 10.0), hi)
        } else {
            let gap = p[n] - p[n - 1];
            (p[n - 1] + POLE_OFFSET * gap, p[n] - POLE_OFFSET * gap)
        };

        let fhi = f(hi)?;
        if fhi <= 0.0 {
            return Err(fail(format!("Z - log(a/R) = {fhi} ≤ 0 just below the pole at {}", p[n])));
        }
        let mut flo = f(lo)?;
        if n == 0 {
            let mut expansions = 0;
            while flo >= 0.0 {
                if expansions == MAX_BRACKET_EXPANSIONS {
                    return Err(fail(format!("no sign change down to x = {lo}")));
                }
                lo = p[0] - 2.0 * (p[0] - lo);
                flo = f(lo)?;
                expansions += 1;
            }
        } else if flo >= 0.0 {
            return Err(fail(format!(
                "Z - log(a/R) = {flo} ≥ 0 just above the pole at {}",
                p[n - 1]
            )));
        }
        find_root(f, lo, hi, flo, fhi, tolerance)
    }
}

/// Root request for [`solve_band`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootRequest {
    pub band: u32,
    pub log_a_over_r: f64,
    pub branch: usize,
    pub tolerance: f64,
}

impl RootRequest {
    pub fn new(band: u32, log_a_over_r: f64, branch: usize) -> Self {
        Self { band, log_a_over_r, branch, tolerance: DEFAULT_TOLERANCE }
    }
}

pub fn solve_band(req: &RootRequest) -> Result<f64> {
    Band::new(req.band).solve(req.log_a_over_r, req.branch, req.tolerance)
}

/// First `count` zeros of the band function, one per branch.
pub fn band_zeros(band: u32, count: usize) -> Result<Vec<f64>> {
    let b = Band::new(band);
    (0..count).map(|n| b.solve(0.0, n, DEFAULT_TOLERANCE)).collect()
}

/// A band with its leading poles and zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandCurve {
    pub l: u32,
    pub poles: Vec<f64>,
    pub zeros: Vec<f64>,
}

impl BandCurve {
    /// Poles and zeros of the first `branches` branches.
    pub fn compute(l: u32, branches: usize) -> Result<Self> {
        Ok(Self { l, poles: poles(l, branches), zeros: band_zeros(l, branches)? })
    }
}

/// Bracketed root of a function increasing from f(lo) < 0 to f(hi) > 0.
///
/// Illinois-modified regula falsi; a bisection step is forced whenever two
/// consecutive steps fail to halve the bracket.
pub(crate) fn find_root<F>(f: F, mut lo: f64, mut hi: f64, mut flo: f64, mut fhi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut side = 0i8;
    let mut slow_steps = 0;
    for _ in 0..MAX_ITERATIONS {
        let width = hi - lo;
        if width <= tol {
            break;
        }
        let mut x = if slow_steps >= 2 {
            slow_steps = 0;
            0.5 * (lo + hi)
        } else {
            (lo * fhi - hi * flo) / (fhi - flo)
        };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        if x <= lo || x >= hi {
            // Bracket exhausted at double precision.
            break;
        }
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
        if hi - lo > 0.5 * width {
            slow_steps += 1;
        } else {
            slow_steps = 0;
        }
    }
    Ok(if flo.abs() < fhi.abs() { lo } else { hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: [[f64; 4]; 2] = [
        [-2.695_194_163_111_27, 1.536_609_486_054_91, 8.705_622_603_824_81, 20.025_495_692_931_6],
        [-1.562_277_839_935_38, 5.022_845_372_529_01, 14.327_692_064_301_69, 27.692_061_960_724_71],
    ];

    #[test]
    fn zeros_of_lowest_bands() {
        for (band, want) in TABLE.iter().enumerate() {
            let got = band_zeros(band as u32, 4).unwrap();
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 1e-11, "L={band}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn find_root_on_polynomial() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let r = find_root(f, 0.0, 3.0, -2.0, 25.0, 1e-14).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn helium_ground_state() {
        let x = solve_band(&RootRequest::new(0, 0.282, 0)).unwrap();
        assert!((x + 1.837).abs() < 2e-3, "{x}");
    }

    #[test]
    fn deep_dimer_bracket_expands() {
        let x = solve_band(&RootRequest::new(0, -10.0, 0)).unwrap();
        let dimer = -2.0 * 20f64.exp();
        assert!(((x - dimer) / dimer).abs() < 0.02, "{x}");
    }

    #[test]
    fn every_branch_lies_between_its_poles() {
        for band in 0..4 {
            let b = Band::new(band);
            for n in 0..5 {
                for log in [-3.0, -0.2, 0.0, 0.4, 5.0] {
                    let x = b.solve(log, n, 1e-12).unwrap();
                    let (lo, hi) = b.branch_interval(n);
                    assert!(x > lo && x < hi, "L={band} n={n} log={log}: {x}");
                    assert!((b.eval(x).unwrap() - log).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn invalid_requests() {
        let bad = RootRequest { tolerance: 0.0, ..RootRequest::new(0, 0.0, 0) };
        assert!(matches!(solve_band(&bad), Err(Error::Domain(_))));
        assert!(matches!(solve_band(&RootRequest::new(0, f64::NAN, 0)), Err(Error::Domain(_))));
        // far outside the range the pole offset can reach
        assert!(matches!(
            solve_band(&RootRequest::new(0, 1e12, 1)),
            Err(Error::BracketFailure { .. })
        ));
    }

    #[test]
    fn band_curve_is_ordered() {
        let c = BandCurve::compute(2, 5).unwrap();
        assert_eq!(c.poles, [4.0, 6.0, 12.0, 14.0, 24.0]);
        assert!(c.zeros.windows(2).all(|w| w[0] < w[1]));
        for (z, p) in c.zeros.iter().zip(&c.poles) {
            assert!(z < p);
        }
    }
}
