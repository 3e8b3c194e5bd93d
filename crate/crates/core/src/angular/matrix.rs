//! Contact-interaction matrix elements in the coupled |(l1 l2) L M⟩ basis.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::threej::{clebsch_gordan, threej, threej_zero_m, triangle};
use crate::error::{Error, Result};

/// Basis label |(l1 l2) L M⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoupledIndex {
    pub l1: u32,
    pub l2: u32,
    pub big_l: u32,
    pub big_m: i32,
}

impl CoupledIndex {
    pub fn new(l1: u32, l2: u32, big_l: u32, big_m: i32) -> Result<Self> {
        if !triangle(l1, l2, big_l) {
            return Err(Error::Domain(format!("({l1} {l2}) cannot couple to L = {big_l}")));
        }
        if big_m.unsigned_abs() > big_l {
            return Err(Error::Domain(format!("|M| = {} exceeds L = {big_l}", big_m.abs())));
        }
        Ok(Self { l1, l2, big_l, big_m })
    }
}

fn hat(l: u32) -> f64 {
    2.0 * l as f64 + 1.0
}

/// ∫ Y*_{l1m1} Y*_{l2m2} Y_{λ1μ1} Y_{λ2μ2} dΩ as a finite sum of 3j symbols over the
/// intermediate coupling L, with M = m1 + m2 = μ1 + μ2.
#[allow(clippy::too_many_arguments)]
pub fn y4_analytic(
    l1: u32,
    m1: i32,
    l2: u32,
    m2: i32,
    lambda1: u32,
    mu1: i32,
    lambda2: u32,
    mu2: i32,
) -> Result<f64> {
    let big_m = m1 + m2;
    if big_m != mu1 + mu2 {
        return Ok(0.0);
    }
    let lo = l1.abs_diff(l2).max(lambda1.abs_diff(lambda2));
    let hi = (l1 + l2).min(lambda1 + lambda2);
    let mut sum = 0.0;
    for big_l in lo..=hi {
        let z1 = threej_zero_m(l1, l2, big_l)?;
        let z2 = threej_zero_m(big_l, lambda1, lambda2)?;
        if z1 == 0.0 || z2 == 0.0 {
            continue;
        }
        sum += hat(big_l)
            * threej(l1, l2, big_l, -m1, -m2, big_m)?
            * threej(big_l, lambda1, lambda2, -big_m, mu1, mu2)?
            * z1
            * z2;
    }
    Ok((hat(l1) * hat(l2) * hat(lambda1) * hat(lambda2)).sqrt() / (4.0 * PI) * sum)
}

/// √((2l1+1)(2l2+1)) (l1 l2 L; 0 0 0): one factor of the separable contact element.
pub fn coupling_amplitude(l1: u32, l2: u32, big_l: u32) -> Result<f64> {
    Ok((hat(l1) * hat(l2)).sqrt() * threej_zero_m(l1, l2, big_l)?)
}

/// Contact matrix element ⟨(l1 l2) L M| δ |(l1' l2') L M⟩ without the C₀/R² prefactor.
///
/// Independent of M and separable: (1/4π) v(l1, l2) v(l1', l2').
pub fn contact_me(l1: u32, l2: u32, l1p: u32, l2p: u32, big_l: u32) -> Result<f64> {
    Ok(coupling_amplitude(l1, l2, big_l)? * coupling_amplitude(l1p, l2p, big_l)? / (4.0 * PI))
}

/// The same matrix element assembled from uncoupled four-harmonic integrals,
/// Σ ⟨l1m1;l2m2|LM⟩ Y4(l1,m1,l2,m2,l1',m1',l2',m2') ⟨l1'm1';l2'm2'|LM⟩.
///
/// `y4` supplies the uncoupled integral, so either the analytic sum or the
/// quadrature can be plugged in.
#[allow(clippy::too_many_arguments)]
pub fn contact_me_coupled<F>(
    l1: u32,
    l2: u32,
    l1p: u32,
    l2p: u32,
    big_l: u32,
    big_m: i32,
    mut y4: F,
) -> Result<f64>
where
    F: FnMut(u32, i32, u32, i32, u32, i32, u32, i32) -> Result<f64>,
{
    let mut sum = 0.0;
    for m1 in -(l1 as i32)..=l1 as i32 {
        let m2 = big_m - m1;
        if m2.unsigned_abs() > l2 {
            continue;
        }
        let cg = clebsch_gordan(l1, m1, l2, m2, big_l, big_m)?;
        if cg == 0.0 {
            continue;
        }
        for m1p in -(l1p as i32)..=l1p as i32 {
            let m2p = big_m - m1p;
            if m2p.unsigned_abs() > l2p {
                continue;
            }
            let cgp = clebsch_gordan(l1p, m1p, l2p, m2p, big_l, big_m)?;
            if cgp == 0.0 {
                continue;
            }
            sum += cg * y4(l1, m1, l2, m2, l1p, m1p, l2p, m2p)? * cgp;
        }
    }
    Ok(sum)
}

/// Dense contact block for one band L under the cutoff l(l+1) ≤ (ΛR)².
#[derive(Debug, Clone)]
pub struct MatrixElementTable {
    pub big_l: u32,
    /// Dimensionless cutoff Λ·R.
    pub cutoff: f64,
    pub indices: Vec<(u32, u32)>,
    /// Matrix elements in units where the C₀/R² prefactor is stripped (contains 1/4π).
    pub values: DMatrix<f64>,
}

impl MatrixElementTable {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// Non-interacting energies l1(l1+1) + l2(l2+1) of the basis states.
    pub fn kinetic_diagonal(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.indices.len(),
            self.indices
                .iter()
                .map(|&(a, b)| (a * (a + 1) + b * (b + 1)) as f64),
        )
    }
}

/// Pairs (l1, l2) coupling to L with nonvanishing (l1 l2 L; 0 0 0) and
/// l_i(l_i+1) ≤ cutoff².
pub fn admissible_pairs(big_l: u32, cutoff: f64) -> Vec<(u32, u32)> {
    let bound = cutoff * cutoff * (1.0 + 1e-12);
    let l_top = (0u32..).take_while(|&l| ((l * (l + 1)) as f64) <= bound).last();
    let Some(l_top) = l_top else {
        return Vec::new();
    };
    let mut pairs = Vec::new();
    for l1 in 0..=l_top {
        for l2 in 0..=l_top {
            if triangle(l1, l2, big_l) && (l1 + l2 + big_l).is_multiple_of(2) {
                pairs.push((l1, l2));
            }
        }
    }
    pairs
}

pub fn build_me_table(big_l: u32, cutoff: f64) -> Result<MatrixElementTable> {
    if !(cutoff > 0.0) {
        return Err(Error::Domain(format!("cutoff must be positive, got {cutoff}")));
    }
    let indices = admissible_pairs(big_l, cutoff);
    if indices.is_empty() {
        return Err(Error::EmptyBasis { l: big_l, cutoff });
    }
    let amplitudes = indices
        .iter()
        .map(|&(a, b)| coupling_amplitude(a, b, big_l))
        .collect::<Result<Vec<_>>>()?;
    let v = DVector::from_vec(amplitudes);
    let values = &v * v.transpose() / (4.0 * PI);
    Ok(MatrixElementTable { big_l, cutoff, indices, values })
}
