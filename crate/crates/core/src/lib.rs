//! Exact spectrum of two particles with a contact interaction confined to the
//! surface of a sphere.
//!
//! The crate evaluates the per-band quantization functions Z_L(x) (closed forms
//! for L ≤ 2, a regularized and extrapolated sum for any L), locates their roots,
//! cross-checks them against a truncated-Hamiltonian diagonalization, and fits
//! two-nucleon halo nuclei with Monte-Carlo error propagation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analogs;
pub mod angular;
pub mod error;
pub mod halo;
pub mod quantization;
pub mod specfun;

pub use error::{Error, Result};
pub use quantization::{Band, BandCurve, RootRequest, HBAR_C};
