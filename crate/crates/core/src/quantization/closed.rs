//! Closed forms of the quantization functions for the three lowest bands.
//!
//! Z₀(x) = −½ [ψ((1−s)/2) + ψ((1+s)/2)],          s = √(2x+1)
//! Z₁(x) = −½ [ψ(1−q) + ψ(1+q)],                  q = √(x/2)
//! Z₂(x) = [3 + x Z₀(x) + 3 (x−2) Z₀(x−2)] / (4x − 6)
//!
//! Below the square-root branch points the digamma arguments form complex
//! conjugate pairs and the pair sum is evaluated as 2 Re ψ. Z₂ follows from a
//! partial-fraction split of the L = 2 sum into L = 0 type sums; x = 3/2 is a
//! removable singularity.

use crate::error::{Error, Result};
use crate::specfun::{digamma, digamma_conjugate_sum};

fn map_pole(x: f64) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Pole { .. } => Error::Pole { at: x },
        other => other,
    }
}

/// Z₀(x).
pub fn z0(x: f64) -> Result<f64> {
    let d = 2.0 * x + 1.0;
    let sum = if d >= 0.0 {
        let s = d.sqrt();
        digamma(0.5 * (1.0 - s)).map_err(map_pole(x))? + digamma(0.5 * (1.0 + s))?
    } else {
        digamma_conjugate_sum(0.5, 0.5 * (-d).sqrt())?
    };
    Ok(-0.5 * sum)
}

/// x Z₀(x), finite at the pole x = 0 that the prefactor cancels.
fn x_times_z0(x: f64) -> Result<f64> {
    let d = 2.0 * x + 1.0;
    if d < 0.0 {
        return Ok(x * z0(x)?);
    }
    // With u = (1−s)/2 one has x = 2u(u−1), hence x ψ(u) = x ψ(u+1) − 2(u−1).
    let s = d.sqrt();
    let u = 0.5 * (1.0 - s);
    let lower = x * digamma(u + 1.0).map_err(map_pole(x))? - 2.0 * (u - 1.0);
    let upper = x * digamma(1.0 - u)?;
    Ok(-0.5 * (lower + upper))
}

/// Z₁(x).
pub fn z1(x: f64) -> Result<f64> {
    let sum = if x >= 0.0 {
        let q = (0.5 * x).sqrt();
        digamma(1.0 - q).map_err(map_pole(x))? + digamma(1.0 + q)?
    } else {
        digamma_conjugate_sum(1.0, (-0.5 * x).sqrt())?
    };
    Ok(-0.5 * sum)
}

const Z2_REMOVABLE: f64 = 1.5;
const Z2_INTERPOLATION_STEP: f64 = 2e-4;

fn z2_direct(x: f64) -> Result<f64> {
    let numerator = 3.0 + x_times_z0(x)? + 3.0 * x_times_z0(x - 2.0).map_err(map_pole(x))?;
    Ok(numerator / (4.0 * x - 6.0))
}

/// Z₂(x).
pub fn z2(x: f64) -> Result<f64> {
    let h = Z2_INTERPOLATION_STEP;
    if (x - Z2_REMOVABLE).abs() >= h {
        return z2_direct(x);
    }
    // Cubic Lagrange interpolation across the removable point.
    let nodes = [-2.0 * h, -h, h, 2.0 * h].map(|o| Z2_REMOVABLE + o);
    let mut acc = 0.0;
    for (i, xi) in nodes.iter().enumerate() {
        let mut basis = 1.0;
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                basis *= (x - xj) / (xi - xj);
            }
        }
        acc += basis * z2_direct(*xi)?;
    }
    Ok(acc)
}

/// Closed-form Z_L(x) for L ∈ {0, 1, 2}.
pub fn z_closed(band: u32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    match band {
        0 => z0(x),
        1 => z1(x),
        2 => z2(x),
        _ => Err(Error::Domain(format!("no closed form for L = {band}"))),
    }
}
