//! Numerical integration on the unit sphere: Gauss–Legendre in cos θ times the
//! trapezoid rule in φ. Exact for band-limited integrands at sufficient order,
//! which makes it an independent check of the analytic four-harmonic integral.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Orthonormal spherical harmonic Y_lm(θ, φ) with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, m: i32, cos_theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    if am > l {
        return Complex64::new(0.0, 0.0);
    }
    let p = normalized_legendre(l, am, cos_theta);
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        y
    } else if am.is_multiple_of(2) {
        y.conj()
    } else {
        -y.conj()
    }
}

/// √((2l+1)/4π · (l−m)!/(l+m)!) P_l^m(x), including (−1)^m.
fn normalized_legendre(l: u32, m: u32, x: f64) -> f64 {
    let sin_theta = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_theta;
    }
    if l == m {
        return pmm;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Quadrature grid with the spherical harmonics up to `l_max` tabulated on its nodes.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    order: usize,
    l_max: u32,
    weights: Vec<f64>,
    /// `harmonics[index(l, m)][node]`
    harmonics: Vec<Vec<Complex64>>,
}

impl SphereQuadrature {
    /// `order` Gauss–Legendre nodes in cos θ and `order` equally spaced φ nodes.
    pub fn new(order: usize, l_max: u32) -> Self {
        let (nodes, gl_weights) = gauss_legendre(order);
        let n_phi = order.max(1);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut weights = Vec::with_capacity(order * n_phi);
        let mut points = Vec::with_capacity(order * n_phi);
        for (x, w) in nodes.iter().zip(&gl_weights) {
            for j in 0..n_phi {
                weights.push(w * dphi);
                points.push((*x, j as f64 * dphi));
            }
        }
        let mut harmonics = Vec::new();
        for l in 0..=l_max {
            for m in -(l as i32)..=l as i32 {
                harmonics.push(
                    points
                        .iter()
                        .map(|&(x, phi)| spherical_harmonic(l, m, x, phi))
                        .collect(),
                );
            }
        }
        Self { order, l_max, weights, harmonics }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn index(l: u32, m: i32) -> usize {
        (l * l) as usize + (m + l as i32) as usize
    }

    /// ∫ Y*_{l1m1} Y*_{l2m2} Y_{λ1μ1} Y_{λ2μ2} dΩ, complex as assembled on the grid.
    #[allow(clippy::too_many_arguments)]
    pub fn y4_complex(
        &self,
        l1: u32,
        m1: i32,
        l2: u32,
        m2: i32,
        lambda1: u32,
        mu1: i32,
        lambda2: u32,
        mu2: i32,
    ) -> Result<Complex64> {
        let required = 2 * (l1 + l2 + lambda1 + lambda2) as usize + 2;
        if self.order < required {
            return Err(Error::InsufficientOrder { order: self.order, required });
        }
        let top = l1.max(l2).max(lambda1).max(lambda2);
        if top > self.l_max {
            return Err(Error::Domain(format!(
                "l = {top} exceeds the tabulated maximum {}",
                self.l_max
            )));
        }
        let zero = Complex64::new(0.0, 0.0);
        if [(l1, m1), (l2, m2), (lambda1, mu1), (lambda2, mu2)]
            .iter()
            .any(|&(l, m)| m.unsigned_abs() > l)
        {
            return Ok(zero);
        }
        let a = &self.harmonics[Self::index(l1, m1)];
        let b = &self.harmonics[Self::index(l2, m2)];
        let c = &self.harmonics[Self::index(lambda1, mu1)];
        let d = &self.harmonics[Self::index(lambda2, mu2)];
        let mut acc = zero;
        for k in 0..self.weights.len() {
            acc += (a[k] * b[k]).conj() * c[k] * d[k] * self.weights[k];
        }
        Ok(acc)
    }
}

/// Real part of the numerically integrated four-harmonic product.
#[allow(clippy::too_many_arguments)]
pub fn y4_quadrature(
    l1: u32,
    m1: i32,
    l2: u32,
    m2: i32,
    lambda1: u32,
    mu1: i32,
    lambda2: u32,
    mu2: i32,
    order: usize,
) -> Result<f64> {
    let top = l1.max(l2).max(lambda1).max(lambda2);
    let grid = SphereQuadrature::new(order, top);
    grid.y4_complex(l1, m1, l2, m2, lambda1, mu1, lambda2, mu2).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6);
        for k in 0..12 {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn harmonics_are_orthonormal() {
        let grid = SphereQuadrature::new(12, 4);
        for l in 0..=4u32 {
            for m in -(l as i32)..=l as i32 {
                for lp in 0..=4u32 {
                    for mp in -(lp as i32)..=lp as i32 {
                        let a = &grid.harmonics[SphereQuadrature::index(l, m)];
                        let b = &grid.harmonics[SphereQuadrature::index(lp, mp)];
                        let s: Complex64 = (0..grid.weights.len())
                            .map(|k| a[k].conj() * b[k] * grid.weights[k])
                            .sum();
                        let want = if l == lp && m == mp { 1.0 } else { 0.0 };
                        assert!((s.re - want).abs() < 1e-13 && s.im.abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn known_harmonic_values() {
        // Y_10 = √(3/4π) cos θ, Y_11 = −√(3/8π) sin θ e^{iφ}
        let (ct, phi) = (0.3f64, 1.1f64);
        let y10 = spherical_harmonic(1, 0, ct, phi);
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt() * ct).abs() < 1e-15);
        let y11 = spherical_harmonic(1, 1, ct, phi);
        let st = (1.0 - ct * ct).sqrt();
        let want = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * st, phi);
        assert!((y11 - want).norm() < 1e-15);
        let y1m1 = spherical_harmonic(1, -1, ct, phi);
        assert!((y1m1 + y11.conj()).norm() < 1e-15);
    }

    #[test]
    fn all_s_waves() {
        let v = y4_quadrature(0, 0, 0, 0, 0, 0, 0, 0, 8).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn insufficient_order() {
        assert!(matches!(
            y4_quadrature(2, 0, 2, 0, 2, 0, 2, 0, 10),
            Err(Error::InsufficientOrder { required: 18, .. })
        ));
    }
}
