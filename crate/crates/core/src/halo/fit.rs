//! Fits of the contact parameters (a, R) to measured levels.
//!
//! Every measured level is assigned to branch 0 of its band.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantization::{
    a_over_r_to_atilde, energy_from_x, find_root, log_a_over_r_from_atilde, poles, solve_band, x_from_energy,
    Band, RootRequest, HBAR_C,
};

/// Radius scan for the two-level fit, fm.
pub const R_SCAN_MIN: f64 = 0.5;
pub const R_SCAN_MAX: f64 = 50.0;
pub const R_SCAN_POINTS: usize = 200;

/// Maximum band-condition residual accepted after a fit.
pub const FIT_RESIDUAL: f64 = 1e-10;

/// A measured energy (MeV) on branch 0 of band `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelInput {
    pub energy: f64,
    pub l: u32,
}

/// Fitted contact parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactFit {
    /// fm.
    pub a: f64,
    /// fm.
    pub r: f64,
    pub atilde: f64,
    pub log_a_over_r: f64,
}

impl ContactFit {
    fn from_log(r: f64, log_a_over_r: f64) -> Result<Self> {
        Ok(Self { a: r * log_a_over_r.exp(), r, atilde: a_over_r_to_atilde(log_a_over_r.exp())?, log_a_over_r })
    }
}

fn branch0_top(l: u32) -> f64 {
    poles(l, 1)[0]
}

/// Z_L(x(E, R)) on branch 0, or a pole collision if x has left that branch.
fn band_value(band: &Band, level: LevelInput, mass: f64, r: f64) -> Result<f64> {
    let x = x_from_energy(level.energy, mass, r)?;
    if x >= branch0_top(level.l) {
        return Err(Error::PoleCollision { r });
    }
    band.eval(x)
}

/// (a, R) such that both levels solve their band conditions with a common log(a/R).
pub fn fit_two_levels(mass: f64, first: LevelInput, second: LevelInput) -> Result<ContactFit> {
    if first == second {
        return Err(Error::Domain("the two levels must differ".into()));
    }
    let (b1, b2) = (Band::new(first.l), Band::new(second.l));
    let g = |r: f64| Ok(band_value(&b1, first, mass, r)? - band_value(&b2, second, mass, r)?);

    let ratio = (R_SCAN_MAX / R_SCAN_MIN).ln() / (R_SCAN_POINTS - 1) as f64;
    let mut previous: Option<(f64, f64)> = None;
    let mut bracket = None;
    for i in 0..R_SCAN_POINTS {
        let r = R_SCAN_MIN * (ratio * i as f64).exp();
        let v = match g(r) {
            Ok(v) => v,
            // Scanning upward, x only moves further from zero, so the branch is lost for good.
            Err(Error::PoleCollision { r }) => match bracket {
                Some(_) => break,
                None => return Err(Error::PoleCollision { r }),
            },
            Err(e) => return Err(e),
        };
        if v == 0.0 {
            bracket = Some((r, r, v, v));
            break;
        }
        if let Some((rp, vp)) = previous {
            if vp.signum() != v.signum() {
                bracket = Some((rp, r, vp, v));
                break;
            }
        }
        previous = Some((r, v));
    }
    let (lo, hi, vlo, vhi) = bracket.ok_or(Error::NoBracket { r_min: R_SCAN_MIN, r_max: R_SCAN_MAX })?;
    let r = if lo == hi {
        lo
    } else if vlo < 0.0 {
        find_root(g, lo, hi, vlo, vhi, 1e-14 * hi)?
    } else {
        find_root(|r| g(r).map(|v| -v), lo, hi, -vlo, -vhi, 1e-14 * hi)?
    };
    let log = band_value(&b1, first, mass, r)?;
    let residual = (band_value(&b2, second, mass, r)? - log).abs();
    if residual > FIT_RESIDUAL {
        return Err(Error::NoBracket { r_min: lo, r_max: hi });
    }
    ContactFit::from_log(r, log)
}

/// (a, R) for one level given the reduced scattering length.
pub fn fit_one_level(mass: f64, level: LevelInput, atilde: f64) -> Result<ContactFit> {
    let log = log_a_over_r_from_atilde(atilde)?;
    let x = solve_band(&RootRequest::new(level.l, log, 0))?;
    // x = 2 m E R² / (ħc)², so E and x must share a sign.
    let r2 = x * HBAR_C * HBAR_C / (2.0 * mass * level.energy);
    if !(r2 > 0.0) || !r2.is_finite() {
        return Err(Error::NoBracket { r_min: R_SCAN_MIN, r_max: R_SCAN_MAX });
    }
    let r = r2.sqrt();
    if !(R_SCAN_MIN..=R_SCAN_MAX).contains(&r) {
        return Err(Error::NoBracket { r_min: R_SCAN_MIN, r_max: R_SCAN_MAX });
    }
    ContactFit::from_log(r, log)
}

/// Energy (MeV) of branch `n` of band `l` at the fitted parameters.
pub fn level_energy(fit: &ContactFit, mass: f64, l: u32, n: usize) -> Result<f64> {
    let x = solve_band(&RootRequest::new(l, fit.log_a_over_r, n))?;
    energy_from_x(x, mass, fit.r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantization::z_closed;

    const M_N: f64 = 939.565;

    fn he6() -> ContactFit {
        fit_two_levels(M_N, LevelInput { energy: -0.972, l: 0 }, LevelInput { energy: 0.824, l: 2 }).unwrap()
    }

    #[test]
    fn helium6() {
        let f = he6();
        assert!((f.r - 6.258).abs() < 2e-3, "{f:?}");
        assert!((f.atilde + 5.58).abs() < 5e-3, "{f:?}");
        assert!((f.a - 8.293).abs() < 5e-3, "{f:?}");
        for (e, l) in [(-0.972, 0), (0.824, 2)] {
            let x = x_from_energy(e, M_N, f.r).unwrap();
            assert!((z_closed(l, x).unwrap() - f.log_a_over_r).abs() < FIT_RESIDUAL);
        }
        assert!((f.atilde + std::f64::consts::PI / (2.0 * (f.a / f.r).ln())).abs() < 1e-12);
    }

    #[test]
    fn fitted_energies_round_trip() {
        let f = he6();
        assert!((level_energy(&f, M_N, 0, 0).unwrap() + 0.972).abs() < 1e-10);
        assert!((level_energy(&f, M_N, 2, 0).unwrap() - 0.824).abs() < 1e-10);
    }

    #[test]
    fn lithium6() {
        let f = fit_two_levels(938.918, LevelInput { energy: -3.6983, l: 0 }, LevelInput { energy: -1.5123, l: 2 })
            .unwrap();
        assert!((f.atilde - 3.760).abs() < 3e-3, "{f:?}");
    }

    #[test]
    fn lithium11() {
        let f = fit_one_level(M_N, LevelInput { energy: -0.369, l: 0 }, -5.58).unwrap();
        assert!((f.r - 10.154).abs() < 0.01, "{f:?}");
        assert!((f.a - 13.46).abs() < 0.01, "{f:?}");
        // predicting a second level and refitting recovers ã
        let e2 = level_energy(&f, M_N, 2, 0).unwrap();
        let back = fit_two_levels(M_N, LevelInput { energy: -0.369, l: 0 }, LevelInput { energy: e2, l: 2 }).unwrap();
        assert!((back.atilde + 5.58).abs() < 1e-8);
    }

    #[test]
    fn scaling_covariance() {
        let c = 3.0;
        let f = fit_two_levels(M_N / c, LevelInput { energy: -0.972 * c, l: 0 }, LevelInput { energy: 0.824 * c, l: 2 })
            .unwrap();
        let base = he6();
        assert!((f.r - base.r).abs() < 1e-9 * base.r);
        assert!((f.atilde - base.atilde).abs() < 1e-9);
    }

    #[test]
    fn failures() {
        // a positive L = 0 energy is never on branch 0
        assert!(matches!(
            fit_two_levels(M_N, LevelInput { energy: 0.5, l: 0 }, LevelInput { energy: 0.824, l: 2 }),
            Err(Error::PoleCollision { .. })
        ));
        // two bound levels in the same band cannot both sit on branch 0
        assert!(matches!(
            fit_two_levels(M_N, LevelInput { energy: -1.0, l: 0 }, LevelInput { energy: -2.0, l: 0 }),
            Err(Error::NoBracket { .. })
        ));
        assert!(fit_one_level(M_N, LevelInput { energy: 0.3, l: 0 }, -5.58).is_err());
        assert!(fit_one_level(M_N, LevelInput { energy: -0.3, l: 0 }, 0.0).is_err());
    }
}
