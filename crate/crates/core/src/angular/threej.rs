//! Wigner 3j symbols and Clebsch–Gordan coefficients for integer angular momenta.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest angular momentum accepted by the tabulated formulas.
///
/// The cutoff ladder of the general quantization sum grows with √|x| and
/// reaches l ≈ 2·10⁴ at the largest energies it serves.
pub const MAX_L: u32 = 32768;

fn log_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 3 * MAX_L as usize + 2;
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for k in 1..=n {
            // Neumaier summation keeps the table accurate to a few ulp.
            let term = (k as f64).ln();
            let t = acc + term;
            if acc.abs() >= term.abs() {
                comp += (acc - t) + term;
            } else {
                comp += (term - t) + acc;
            }
            acc = t;
            table.push(acc + comp);
        }
        table
    })
}

/// `c(n) = (2n)! / (4ⁿ (n!)²)`, built as a running product of (2k−1)/(2k).
fn central_ratios() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 3 * MAX_L as usize / 2 + 2;
        let mut table = Vec::with_capacity(n + 1);
        let mut c = 1.0f64;
        table.push(c);
        for k in 1..=n {
            let k = k as f64;
            c *= (2.0 * k - 1.0) / (2.0 * k);
            table.push(c);
        }
        table
    })
}

fn check_bound(ls: &[u32]) -> Result<()> {
    match ls.iter().copied().find(|&l| l > MAX_L) {
        Some(l) => Err(Error::Overflow { l, bound: MAX_L }),
        None => Ok(()),
    }
}

/// Triangle rule |l1 − l2| ≤ l3 ≤ l1 + l2.
pub fn triangle(l1: u32, l2: u32, l3: u32) -> bool {
    l1.abs_diff(l2) <= l3 && l3 <= l1 + l2
}

/// The symbol (l1 l2 l3; 0 0 0).
///
/// Vanishes for odd l1 + l2 + l3 or a violated triangle rule. Otherwise, with
/// 2g = l1 + l2 + l3,
///
/// (l1 l2 l3; 0 0 0)² = c(g−l1) c(g−l2) c(g−l3) / (c(g) (2g+1)),   sign (−1)^g,
///
/// where c(n) = (2n)!/(4ⁿ n!²) stays O(n^{-1/2}) and never overflows.
pub fn threej_zero_m(l1: u32, l2: u32, l3: u32) -> Result<f64> {
    check_bound(&[l1, l2, l3])?;
    Ok(threej_zero_m_squared_unchecked(l1, l2, l3).map_or(0.0, |(sq, sign)| sign * sq.sqrt()))
}

/// (l1 l2 l3; 0 0 0)² together with the sign, or `None` when it vanishes.
pub(crate) fn threej_zero_m_squared_unchecked(l1: u32, l2: u32, l3: u32) -> Option<(f64, f64)> {
    let sum = l1 + l2 + l3;
    if sum % 2 == 1 || !triangle(l1, l2, l3) {
        return None;
    }
    let g = (sum / 2) as usize;
    let c = central_ratios();
    let sq = c[g - l1 as usize] * c[g - l2 as usize] * c[g - l3 as usize]
        / (c[g] * (2 * g + 1) as f64);
    let sign = if g.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((sq, sign))
}

/// (l1 l2 l3; 0 0 0)², used by the quantization sums.
pub fn threej_zero_m_squared(l1: u32, l2: u32, l3: u32) -> Result<f64> {
    check_bound(&[l1, l2, l3])?;
    Ok(threej_zero_m_squared_unchecked(l1, l2, l3).map_or(0.0, |(sq, _)| sq))
}

/// General Wigner 3j symbol (j1 j2 j3; m1 m2 m3) via the Racah sum.
pub fn threej(j1: u32, j2: u32, j3: u32, m1: i32, m2: i32, m3: i32) -> Result<f64> {
    check_bound(&[j1, j2, j3])?;
    if m1 + m2 + m3 != 0
        || !triangle(j1, j2, j3)
        || m1.unsigned_abs() > j1
        || m2.unsigned_abs() > j2
        || m3.unsigned_abs() > j3
    {
        return Ok(0.0);
    }
    if m1 == 0 && m2 == 0 {
        return threej_zero_m(j1, j2, j3);
    }
    Ok(racah(j1, j2, j3, m1, m2, m3))
}

fn racah(j1: u32, j2: u32, j3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    let lf = log_factorials();
    let f = |n: i64| lf[n as usize];
    let (j1, j2, j3) = (j1 as i64, j2 as i64, j3 as i64);
    let (m1, m2, m3) = (m1 as i64, m2 as i64, m3 as i64);

    let log_prefactor = 0.5
        * (f(j1 + j2 - j3) + f(j1 - j2 + j3) + f(-j1 + j2 + j3) - f(j1 + j2 + j3 + 1)
            + f(j1 + m1)
            + f(j1 - m1)
            + f(j2 + m2)
            + f(j2 - m2)
            + f(j3 + m3)
            + f(j3 - m3));

    let k_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let k_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let log_den = f(k)
            + f(j3 - j2 + k + m1)
            + f(j3 - j1 + k - m2)
            + f(j1 + j2 - j3 - k)
            + f(j1 - k - m1)
            + f(j2 - k + m2);
        let term = (log_prefactor - log_den).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    let phase = if (j1 - j2 - m3).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * sum
}

/// Condon–Shortley Clebsch–Gordan coefficient ⟨l1 m1; l2 m2 | L M⟩.
pub fn clebsch_gordan(l1: u32, m1: i32, l2: u32, m2: i32, big_l: u32, big_m: i32) -> Result<f64> {
    let w = threej(l1, l2, big_l, m1, m2, -big_m)?;
    let phase = (l1 as i64 - l2 as i64 + big_m as i64).rem_euclid(2);
    let sign = if phase == 0 { 1.0 } else { -1.0 };
    Ok(sign * (2.0 * big_l as f64 + 1.0).sqrt() * w)
}
