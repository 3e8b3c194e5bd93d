//! Truncated-Hamiltonian diagonalization: an independent check of the band roots.
//!
//! In the cutoff basis the Hamiltonian is the diagonal of rotor energies plus
//! the rank-1 contact block. The coupling is the single place where the running
//! contact strength meets the matrix-element table: in x-units,
//!
//!   2mR² C₀(Λ)/(ħc)² · (ħc/R)² · table = −4π / log((a/R) λ̃) · table,  λ̃ = √(λ(λ+1)).

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::angular::build_me_table;
use crate::error::{Error, Result};

/// Strength of the contact term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleCoupling {
    /// Free Hamiltonian (the |log(a/R)| → ∞ limit).
    Zero,
    AOverR(f64),
}

/// Sorted eigenvalues (x-units) of the truncated Hamiltonian for each cutoff λ.
pub fn diagonalize_oracle(band: u32, coupling: OracleCoupling, ladder: &[u32]) -> Result<Vec<Vec<f64>>> {
    if let OracleCoupling::AOverR(r) = coupling {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!("a/R must be positive, got {r}")));
        }
    }
    ladder.iter().map(|&lambda| eigenvalues_at(band, coupling, lambda)).collect()
}

fn eigenvalues_at(band: u32, coupling: OracleCoupling, lambda: u32) -> Result<Vec<f64>> {
    if lambda < band + 1 {
        return Err(Error::Domain(format!("cutoff λ = {lambda} must be at least L + 1")));
    }
    let lf = lambda as f64;
    let lambda_tilde = (lf * (lf + 1.0)).sqrt();
    let table = build_me_table(band, lambda_tilde)?;
    let strength = match coupling {
        OracleCoupling::Zero => 0.0,
        OracleCoupling::AOverR(r) => {
            let log = (r * lambda_tilde).ln();
            if log.abs() < 1e-12 {
                return Err(Error::Pole { at: r });
            }
            -4.0 * PI / log
        }
    };
    let h: DMatrix<f64> = DMatrix::from_diagonal(&table.kinetic_diagonal()) + table.values * strength;
    let eigen = SymmetricEigen::try_new(h, 1e-14, 10_000)
        .ok_or_else(|| Error::Eigensolver(format!("no convergence for L = {band}, λ = {lambda}")))?;
    let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}
