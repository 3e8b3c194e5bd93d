//! Digamma and trigamma on the real line and in the complex plane.
//!
//! All four functions shift the argument upward with the recurrence until the
//! asymptotic Bernoulli series is accurate, and use the reflection formula for
//! arguments with negative real part. Arguments within [`POLE_TOLERANCE`] of a
//! nonpositive integer are reported as [`Error::Pole`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex argument/result of the complex-plane evaluations.
pub type ComplexValue = Complex64;

/// Distance from a nonpositive integer below which an argument counts as a pole.
pub const POLE_TOLERANCE: f64 = 1e-14;

/// Asymptotic series is used once the (shifted) argument reaches this size.
const ASYMPTOTIC_START: f64 = 10.0;

/// B_{2k} / (2k) for k = 1..7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// B_{2k} for k = 1..7.
const TRIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn check_real_pole(z: f64) -> Result<()> {
    if z.is_nan() {
        return Err(Error::Domain("NaN argument".into()));
    }
    if z <= 0.0 && (z - z.round()).abs() < POLE_TOLERANCE {
        return Err(Error::Pole { at: z });
    }
    Ok(())
}

fn check_complex_pole(z: Complex64) -> Result<()> {
    if z.re.is_nan() || z.im.is_nan() {
        return Err(Error::Domain("NaN argument".into()));
    }
    if z.im.abs() < POLE_TOLERANCE {
        check_real_pole(z.re)?;
    }
    Ok(())
}

/// Reduces `z` modulo 2 so that trigonometric functions of `π z` stay accurate.
fn reduce_mod2(z: f64) -> f64 {
    z - 2.0 * (z / 2.0).round()
}

/// `π cot(π z)` for real non-integer `z`.
fn pi_cot_pi(z: f64) -> f64 {
    let r = reduce_mod2(z) * PI;
    PI * r.cos() / r.sin()
}

/// `cot(π z)` for complex `z`, stable for any imaginary part.
fn cot_pi_complex(z: Complex64) -> Complex64 {
    let two_x = 2.0 * PI * (z.re - z.re.round());
    let t = (-2.0 * PI * z.im.abs()).exp();
    let denom = 1.0 + t * t - 2.0 * t * two_x.cos();
    let re = 2.0 * t * two_x.sin() / denom;
    let im = -z.im.signum() * (1.0 - t * t) / denom;
    // signum(0.0) is 1.0 but then 1 - t^2 vanishes, so the imaginary part is 0.
    Complex64::new(re, im)
}

/// ψ(z) = d/dz log Γ(z) for real `z`.
pub fn digamma(z: f64) -> Result<f64> {
    check_real_pole(z)?;
    if z < 0.0 {
        return Ok(digamma(1.0 - z)? - pi_cot_pi(z));
    }
    let mut x = z;
    let mut acc = 0.0;
    while x < ASYMPTOTIC_START {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in DIGAMMA_ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// ψ(z) for complex `z`.
pub fn digamma_complex(z: ComplexValue) -> Result<ComplexValue> {
    check_complex_pole(z)?;
    if z.im == 0.0 {
        return digamma(z.re).map(|v| Complex64::new(v, 0.0));
    }
    if z.re < 0.0 {
        let reflected = digamma_complex(Complex64::new(1.0, 0.0) - z)?;
        return Ok(reflected - PI * cot_pi_complex(z));
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.norm() < ASYMPTOTIC_START {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for c in DIGAMMA_ASYMPTOTIC {
        series += pow * c;
        pow *= inv2;
    }
    Ok(acc + w.ln() - inv * 0.5 - series)
}

/// `ψ(a + ib) + ψ(a − ib) = 2 Re ψ(a + ib)`, real by construction.
pub fn digamma_conjugate_sum(a: f64, b: f64) -> Result<f64> {
    Ok(2.0 * digamma_complex(Complex64::new(a, b))?.re)
}

/// ψ⁽¹⁾(z) = d/dz ψ(z) for real `z`.
pub fn trigamma(z: f64) -> Result<f64> {
    check_real_pole(z)?;
    if z < 0.0 {
        let s = (reduce_mod2(z) * PI).sin();
        return Ok(PI * PI / (s * s) - trigamma(1.0 - z)?);
    }
    let mut x = z;
    let mut acc = 0.0;
    while x < ASYMPTOTIC_START {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv2 * inv;
    for c in TRIGAMMA_ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + inv + 0.5 * inv2 + series)
}

/// ψ⁽¹⁾(z) for complex `z`.
pub fn trigamma_complex(z: ComplexValue) -> Result<ComplexValue> {
    check_complex_pole(z)?;
    if z.im == 0.0 {
        return trigamma(z.re).map(|v| Complex64::new(v, 0.0));
    }
    if z.re < 0.0 {
        // π² / sin²(πz) = π² (1 + cot²(πz))
        let cot = cot_pi_complex(z);
        let csc2 = cot * cot + 1.0;
        let reflected = trigamma_complex(Complex64::new(1.0, 0.0) - z)?;
        return Ok(csc2 * (PI * PI) - reflected);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.norm() < ASYMPTOTIC_START {
        acc += (w * w).inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2 * inv;
    for c in TRIGAMMA_ASYMPTOTIC {
        series += pow * c;
        pow *= inv2;
    }
    Ok(acc + inv + inv2 * 0.5 + series)
}

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct series ψ(z) = −γ + Σ_{k≥0} [1/(k+1) − 1/(k+z)], summed far enough
    /// and closed with the Euler–Maclaurin tail of the remaining terms.
    fn digamma_series_oracle(z: Complex64) -> Complex64 {
        let n = 200_000usize;
        let mut s = Complex64::new(-EULER_GAMMA, 0.0);
        for k in 0..n {
            let kf = k as f64;
            s += Complex64::new(1.0 / (kf + 1.0), 0.0) - (z + kf).inv();
        }
        // tail Σ_{k≥n} [1/(k+1) − 1/(k+z)] ≈ ∫ + boundary terms
        let nf = n as f64;
        let a = Complex64::new(nf + 1.0, 0.0);
        let b = z + nf;
        let tail = (b / a).ln() + (a.inv() - b.inv()) * 0.5
            + (a.powi(2).inv() - b.powi(2).inv()) / 12.0;
        s + tail
    }

    #[test]
    fn digamma_known_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(0.5).unwrap() - (-1.963_510_026_021_423_5)).abs() < 1e-14);
        let lhs = digamma(3.7).unwrap();
        let rhs = digamma(2.7).unwrap() + 1.0 / 2.7;
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn digamma_poles() {
        for z in [0.0, -1.0, -7.0, -3.0 + 1e-15] {
            assert!(matches!(digamma(z), Err(Error::Pole { .. })), "{z}");
        }
        assert!(digamma(-3.0 + 1e-10).is_ok());
        assert!(matches!(
            digamma_complex(Complex64::new(-2.0, 0.0)),
            Err(Error::Pole { .. })
        ));
        assert!(trigamma(-4.0).is_err());
    }

    #[test]
    fn complex_digamma_on_real_axis() {
        let v = digamma_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re + EULER_GAMMA).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn complex_digamma_schwarz_reflection() {
        let up = digamma_complex(Complex64::new(0.5, 1.0)).unwrap();
        let down = digamma_complex(Complex64::new(0.5, -1.0)).unwrap();
        assert!((up - down.conj()).norm() < 1e-15);
    }

    #[test]
    fn complex_digamma_matches_series() {
        for z in [
            Complex64::new(0.5, 2.0),
            Complex64::new(-3.3, 0.7),
            Complex64::new(2.0, -15.0),
        ] {
            let got = digamma_complex(z).unwrap();
            let want = digamma_series_oracle(z);
            assert!((got.re - want.re).abs() < 1e-12, "{z}: {got} vs {want}");
            assert!((got.im - want.im).abs() < 1e-12, "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn complex_digamma_large_imaginary_part() {
        // Im ψ(1/2 + iy) = (π/2) tanh(πy)
        for y in [30.0, 200.0, 1e6] {
            let v = digamma_complex(Complex64::new(0.5, y)).unwrap();
            assert!((v.im - 0.5 * PI * (PI * y).tanh()).abs() < 1e-12);
        }
    }

    #[test]
    fn trigamma_known_values() {
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((trigamma(0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        let lhs = trigamma(2.5).unwrap();
        let rhs = trigamma(1.5).unwrap() - 1.0 / (1.5 * 1.5);
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn complex_trigamma_matches_finite_difference() {
        for z in [Complex64::new(0.5, 1.3), Complex64::new(-2.4, 0.6)] {
            let h = 1e-5;
            let d = (digamma_complex(z + h).unwrap() - digamma_complex(z - h).unwrap()) / (2.0 * h);
            let t = trigamma_complex(z).unwrap();
            assert!((t - d).norm() < 1e-8, "{z}: {t} vs {d}");
        }
        let up = trigamma_complex(Complex64::new(0.5, 2.0)).unwrap();
        let down = trigamma_complex(Complex64::new(0.5, -2.0)).unwrap();
        assert!((up - down.conj()).norm() < 1e-15);
    }

    #[test]
    fn asymptotic_behaviour() {
        for z in [20.5f64, 100.0, 1e4] {
            let approx = z.ln() - 0.5 / z;
            assert!((digamma(z).unwrap() - approx).abs() < 0.1 / (z * z));
        }
    }

    proptest! {
        #[test]
        fn digamma_recurrence(z in 0.1f64..50.0) {
            let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
            prop_assert!(d.abs() < 1e-13);
        }

        #[test]
        fn trigamma_recurrence(z in 0.1f64..50.0) {
            let d = trigamma(z + 1.0).unwrap() - trigamma(z).unwrap() + 1.0 / (z * z);
            prop_assert!(d.abs() < 1e-12);
        }

        #[test]
        fn digamma_reflection(z in -20.0f64..0.0) {
            prop_assume!((z - z.round()).abs() > 1e-3);
            let lhs = digamma(1.0 - z).unwrap() - digamma(z).unwrap();
            let rhs = PI / (PI * z).tan();
            prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + rhs.abs()));
        }

        #[test]
        fn conjugate_sum_is_twice_real_part(a in -10.0f64..10.0, b in 0.01f64..10.0) {
            let s = digamma_conjugate_sum(a, b).unwrap();
            let p = digamma_complex(Complex64::new(a, b)).unwrap();
            let m = digamma_complex(Complex64::new(a, -b)).unwrap();
            prop_assert!((s - (p + m).re).abs() < 1e-12 * (1.0 + s.abs()));
        }
    }
}
