//! Quantization conditions on the sphere: closed forms for the lowest bands,
//! the extrapolated cutoff sum for any band, pole and zero structure, root
//! solving, asymptotic expansions and the diagonalization oracle.

mod asymptotics;
mod closed;
mod oracle;
mod poles;
mod roots;
mod sum;
mod units;

pub use asymptotics::{
    asymptote_branch, asymptote_noninteracting, dimer_x, expansion_near_zero, near_zero_slope,
};
pub use closed::{z0, z1, z2, z_closed};
pub use oracle::{diagonalize_oracle, OracleCoupling};
pub use poles::poles;
pub use roots::{band_zeros, solve_band, Band, BandCurve, Method, RootRequest, DEFAULT_TOLERANCE};
pub use sum::{neville_at_zero, z_dimer_series, z_general, z_general_with, z_sum, z_sum_ladder, Extrapolation};
pub use units::{
    a_over_r_to_atilde, atilde_to_a_over_r, c0_coefficient, energy_from_x, epsilon_l,
    log_a_over_r_from_atilde, x_from_energy, HBAR_C,
};


pub(crate) use roots::find_root;
pub(crate) use sum::CompensatedSum;
