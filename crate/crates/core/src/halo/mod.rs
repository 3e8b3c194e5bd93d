//! Halo nuclei as an inert core plus two nucleons on a sphere: quantum-number
//! bookkeeping, fits of the contact parameters, Monte-Carlo error propagation
//! and spectrum prediction.

mod bands;
mod fit;
mod montecarlo;
mod predict;
mod system;

pub use bands::{allowed_bands, format_j_pi, AllowedBand};
pub use fit::{
    fit_one_level, fit_two_levels, level_energy, ContactFit, LevelInput, FIT_RESIDUAL, R_SCAN_MAX,
    R_SCAN_MIN, R_SCAN_POINTS,
};
pub use montecarlo::{mc_propagate, ChannelFit, FitResult, FitTask, SystemFit, MAX_FAILURE_FRACTION};
pub use predict::{predict_spectrum, EnergyLevel, LevelFailure, Prediction};
pub use system::{AtildeSource, Channel, HaloSystem, MeasuredLevel};
pub use crate::quantization::{energy_from_x, x_from_energy};
