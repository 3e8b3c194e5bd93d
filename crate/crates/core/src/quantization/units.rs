//! Physical constants and conversions between MeV/fm quantities and the
//! dimensionless energy x = 2 m E R² / (ħc)².

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// ħc in MeV·fm.
pub const HBAR_C: f64 = 197.326_980_4;

/// Rigid-rotor kinetic energy ε_l = l(l+1) (ħc)² / (2 m R²) in MeV.
pub fn epsilon_l(l: u32, mass: f64, radius: f64) -> Result<f64> {
    check_positive("mass", mass)?;
    check_positive("radius", radius)?;
    Ok((l as f64) * (l as f64 + 1.0) * HBAR_C * HBAR_C / (2.0 * mass * radius * radius))
}

/// x = 2 m E R² / (ħc)².
pub fn x_from_energy(energy: f64, mass: f64, radius: f64) -> Result<f64> {
    check_positive("mass", mass)?;
    check_positive("radius", radius)?;
    Ok(2.0 * mass * energy * radius * radius / (HBAR_C * HBAR_C))
}

/// E = x (ħc)² / (2 m R²).
pub fn energy_from_x(x: f64, mass: f64, radius: f64) -> Result<f64> {
    check_positive("mass", mass)?;
    check_positive("radius", radius)?;
    Ok(x * HBAR_C * HBAR_C / (2.0 * mass * radius * radius))
}

/// Running contact coupling C₀(Λ) = −2π (ħc)² / (m log(aΛ)) in MeV·fm².
///
/// `a` in fm, `lambda` in fm⁻¹, `mass` in MeV.
pub fn c0_coefficient(a: f64, lambda: f64, mass: f64) -> Result<f64> {
    check_positive("mass", mass)?;
    let a_lambda = a * lambda;
    if !(a_lambda > 0.0) {
        return Err(Error::Domain(format!("aΛ must be positive, got {a_lambda}")));
    }
    if (a_lambda - 1.0).abs() < 1e-12 {
        return Err(Error::Pole { at: a_lambda });
    }
    Ok(-2.0 * PI * HBAR_C * HBAR_C / (mass * a_lambda.ln()))
}

/// a/R = exp(−π / (2ã)).
pub fn atilde_to_a_over_r(atilde: f64) -> Result<f64> {
    if atilde == 0.0 || !atilde.is_finite() {
        return Err(Error::Domain(format!("ã must be finite and nonzero, got {atilde}")));
    }
    Ok((-PI / (2.0 * atilde)).exp())
}

/// ã = −π / (2 log(a/R)).
pub fn a_over_r_to_atilde(a_over_r: f64) -> Result<f64> {
    if !(a_over_r > 0.0) || a_over_r == 1.0 || !a_over_r.is_finite() {
        return Err(Error::Domain(format!("a/R must be positive and ≠ 1, got {a_over_r}")));
    }
    Ok(-PI / (2.0 * a_over_r.ln()))
}

/// log(a/R) = −π / (2ã).
pub fn log_a_over_r_from_atilde(atilde: f64) -> Result<f64> {
    if atilde == 0.0 || !atilde.is_finite() {
        return Err(Error::Domain(format!("ã must be finite and nonzero, got {atilde}")));
    }
    Ok(-PI / (2.0 * atilde))
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rotor_energies() {
        assert_eq!(epsilon_l(0, 939.565, 1.0).unwrap(), 0.0);
        let e1 = epsilon_l(1, 939.565, 1.0).unwrap();
        assert!((e1 - 2.0 * HBAR_C * HBAR_C / (2.0 * 939.565)).abs() < 1e-12);
        assert!((e1 - 41.44).abs() < 0.01);
        let x = x_from_energy(e1, 939.565, 1.0).unwrap();
        assert!((x - 2.0).abs() < 1e-14);
        assert!(epsilon_l(1, -1.0, 1.0).is_err());
    }

    #[test]
    fn halo_energy_conversion() {
        let x = x_from_energy(-0.972, 939.565, 6.258).unwrap();
        assert!((x + 1.8371).abs() < 1e-4, "{x}");
        assert_eq!(x_from_energy(0.0, 939.565, 6.258).unwrap(), 0.0);
    }

    #[test]
    fn contact_coupling() {
        let m = 939.565;
        let base = c0_coefficient(1.0, std::f64::consts::E, m).unwrap();
        assert!((base + 2.0 * PI * HBAR_C * HBAR_C / m).abs() < 1e-9);
        let doubled = c0_coefficient(1.0, std::f64::consts::E.powi(2), m).unwrap();
        assert!((doubled - base / 2.0).abs() < 1e-9);
        assert!(matches!(c0_coefficient(2.0, 0.5, m), Err(Error::Pole { .. })));
        assert!(c0_coefficient(2.0, 0.5 + 1e-6, m).unwrap() < 0.0);
        assert!(c0_coefficient(2.0, 0.5 - 1e-6, m).unwrap() > 0.0);
    }

    #[test]
    fn scattering_length_maps() {
        let r = atilde_to_a_over_r(-5.58).unwrap();
        assert!((r - (PI / 11.16).exp()).abs() < 1e-15);
        assert!((r - 1.3253).abs() < 3e-4);
        assert!((atilde_to_a_over_r(1e12).unwrap() - 1.0).abs() < 1e-11);
        assert!(atilde_to_a_over_r(0.0).is_err());
        assert!(a_over_r_to_atilde(1.0).is_err());
        assert!(a_over_r_to_atilde(-1.0).is_err());
        let back = a_over_r_to_atilde(atilde_to_a_over_r(3.760).unwrap()).unwrap();
        assert!((back - 3.760).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn energy_round_trip(e in -50.0f64..50.0, m in 100.0f64..2000.0, r in 0.5f64..50.0) {
            let x = x_from_energy(e, m, r).unwrap();
            let back = energy_from_x(x, m, r).unwrap();
            prop_assert!((back - e).abs() <= 1e-14 * e.abs().max(1.0));
        }
    }
}
