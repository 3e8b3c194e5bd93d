//! Angular-momentum algebra: 3j symbols, Clebsch–Gordan coefficients, the
//! four-harmonic integral and the contact matrix elements built from them.

mod matrix;
mod quadrature;
mod threej;

pub use matrix::{
    admissible_pairs, build_me_table, contact_me, contact_me_coupled, coupling_amplitude,
    y4_analytic, CoupledIndex, MatrixElementTable,
};
pub use quadrature::{gauss_legendre, spherical_harmonic, y4_quadrature, SphereQuadrature};
pub use threej::{
    clebsch_gordan, threej, threej_zero_m, threej_zero_m_squared, triangle, MAX_L,
};
