//! Spectrum prediction from fitted channels, with uncertainties from the same
//! Monte-Carlo samples that produced the fit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bands::{allowed_bands, format_j_pi};
use super::fit::ContactFit;
use super::montecarlo::{mean_and_sigma, FitTask, SystemFit};
use super::system::HaloSystem;
use crate::error::{Error, Result};
use crate::quantization::{energy_from_x, solve_band, RootRequest};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub s: u8,
    pub t: u8,
    pub l: u32,
    pub branch: usize,
    /// Sample mean of the dimensionless root.
    pub x: f64,
    /// MeV, sample mean.
    pub energy: f64,
    pub sigma: f64,
    pub parity: i8,
    pub two_j_values: Vec<u32>,
    pub label: String,
}

/// A level whose root could not be found for every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelFailure {
    pub s: u8,
    pub t: u8,
    pub l: u32,
    pub branch: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub levels: Vec<EnergyLevel>,
    pub failures: Vec<LevelFailure>,
}

/// Levels of every allowed band L ≤ `l_max`, branches below `levels_per_band`,
/// sorted by energy.
pub fn predict_spectrum(
    system: &HaloSystem,
    fit: &SystemFit,
    l_max: u32,
    levels_per_band: usize,
) -> Result<Prediction> {
    if fit.version != system.version {
        return Err(Error::VersionMismatch { expected: system.version.clone(), found: fit.version.clone() });
    }
    if fit.system != system.name {
        return Err(Error::Schema(format!("fit is for {}, not {}", fit.system, system.name)));
    }
    let task = FitTask::from_system(system)?;
    let draws: Vec<Vec<ContactFit>> = task.samples(fit.seed, fit.samples).into_iter().flatten().collect();
    if fit.samples - draws.len() != fit.failed {
        return Err(Error::Schema("fit report does not match a rerun of its samples".into()));
    }
    let mass = system.constituent_mass;
    let mut levels = Vec::new();
    let mut failures = Vec::new();
    for (ci, channel) in system.channels.iter().enumerate() {
        for band in allowed_bands(system, ci, l_max)? {
            for branch in 0..levels_per_band {
                let roots: Result<Vec<(f64, f64)>> = draws
                    .par_iter()
                    .map(|sample| {
                        let p = &sample[ci];
                        let x = solve_band(&RootRequest::new(band.l, p.log_a_over_r, branch))?;
                        Ok((x, energy_from_x(x, mass, p.r)?))
                    })
                    .collect();
                let roots = match roots {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(LevelFailure {
                            s: channel.s,
                            t: channel.t,
                            l: band.l,
                            branch,
                            error: e.to_string(),
                        });
                        continue;
                    }
                };
                let xs: Vec<f64> = roots.iter().map(|r| r.0).collect();
                let es: Vec<f64> = roots.iter().map(|r| r.1).collect();
                let (x, _) = mean_and_sigma(&xs);
                let (energy, sigma) = mean_and_sigma(&es);
                let j_pi: Vec<String> = band.two_j.iter().map(|&j| format_j_pi(j, band.parity)).collect();
                levels.push(EnergyLevel {
                    s: channel.s,
                    t: channel.t,
                    l: band.l,
                    branch,
                    x,
                    energy,
                    sigma,
                    parity: band.parity,
                    two_j_values: band.two_j.clone(),
                    label: format!("{} (T={})", j_pi.join(", "), channel.t),
                });
            }
        }
    }
    levels.sort_by(|a, b| {
        a.energy.total_cmp(&b.energy).then((a.s, a.t, a.l, a.branch).cmp(&(b.s, b.t, b.l, b.branch)))
    });
    Ok(Prediction { levels, failures })
}
