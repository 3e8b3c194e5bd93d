//! Monte-Carlo propagation of measurement uncertainties through the fits.
//!
//! Sample i draws its Gaussian inputs from its own ChaCha stream (seed, i), so
//! the result does not depend on how samples are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_one_level, fit_two_levels, ContactFit, LevelInput};
use super::system::{AtildeSource, HaloSystem};
use crate::error::{Error, Result};
use crate::quantization::{atilde_to_a_over_r, log_a_over_r_from_atilde};

/// Largest tolerated fraction of failed samples.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

/// Mean and standard deviation of fitted parameters for one channel.
///
/// `r` and `atilde` are sample means; `a` is derived from them so the three
/// stay exactly consistent, while `a_sigma` is the spread of the sampled a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a: f64,
    pub r: f64,
    pub atilde: f64,
    pub a_sigma: f64,
    pub r_sigma: f64,
    pub atilde_sigma: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFit {
    pub s: u8,
    pub t: u8,
    pub source: AtildeSource,
    pub result: FitResult,
}

/// Outcome of a Monte-Carlo fit of a whole system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemFit {
    pub system: String,
    pub version: String,
    pub seed: u64,
    pub samples: usize,
    pub failed: usize,
    pub failure_fraction: f64,
    /// Index of the channel whose levels fix R.
    pub primary: usize,
    pub channels: Vec<ChannelFit>,
}

impl SystemFit {
    pub fn primary_result(&self) -> &FitResult {
        &self.channels[self.primary].result
    }
}

#[derive(Debug, Clone, Copy)]
enum Determination {
    TwoLevels { first: usize, second: usize },
    OneLevel { level: usize },
}

/// The fits a system description calls for: one channel's levels fix R (and
/// that channel's ã when fitted); the other channels carry fixed ã only.
#[derive(Debug, Clone)]
pub struct FitTask {
    system: HaloSystem,
    primary: usize,
    determination: Determination,
}

impl FitTask {
    pub fn from_system(system: &HaloSystem) -> Result<Self> {
        system.validate()?;
        let with_levels: Vec<usize> =
            (0..system.channels.len()).filter(|&c| system.levels_in(c).next().is_some()).collect();
        let [primary] = with_levels[..] else {
            return Err(Error::Schema(format!(
                "exactly one channel must carry measured levels, found {}",
                with_levels.len()
            )));
        };
        let levels: Vec<usize> = (0..system.levels.len()).filter(|&i| system.levels[i].channel == primary).collect();
        let determination = match (system.channels[primary].atilde, &levels[..]) {
            (AtildeSource::Fitted, &[first, second]) => Determination::TwoLevels { first, second },
            (AtildeSource::Fixed { .. }, &[level]) => Determination::OneLevel { level },
            (AtildeSource::Fitted, _) => {
                return Err(Error::Schema("a fitted channel needs exactly two measured levels".into()))
            }
            (AtildeSource::Fixed { .. }, _) => {
                return Err(Error::Schema("a fixed-ã channel needs exactly one measured level".into()))
            }
        };
        for (i, c) in system.channels.iter().enumerate() {
            if i != primary && c.atilde == AtildeSource::Fitted {
                return Err(Error::Schema(format!("channel {i} is fitted but has no levels")));
            }
        }
        Ok(Self { system: system.clone(), primary, determination })
    }

    pub fn system(&self) -> &HaloSystem {
        &self.system
    }

    pub fn primary(&self) -> usize {
        self.primary
    }

    /// Per-channel parameters at the central input values.
    pub fn central(&self) -> Result<Vec<ContactFit>> {
        self.fit_with(&mut |mean, _| mean)
    }

    /// Per-channel parameters for sample `index` of stream `seed`.
    pub fn sample(&self, seed: u64, index: u64) -> Result<Vec<ContactFit>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        self.fit_with(&mut |mean, sigma| {
            let z: f64 = StandardNormal.sample(&mut rng);
            mean + sigma * z
        })
    }

    /// All samples in index order; failed samples are `None`.
    pub fn samples(&self, seed: u64, count: usize) -> Vec<Option<Vec<ContactFit>>> {
        (0..count as u64).into_par_iter().map(|i| self.sample(seed, i).ok()).collect()
    }

    /// Runs the fits with inputs drawn by `draw(mean, sigma)`, always in the
    /// same order: every measured level in file order, then every fixed ã.
    fn fit_with(&self, draw: &mut dyn FnMut(f64, f64) -> f64) -> Result<Vec<ContactFit>> {
        let sys = &self.system;
        let energies: Vec<f64> = sys.levels.iter().map(|l| draw(l.energy, l.sigma)).collect();
        let atildes: Vec<Option<f64>> = sys
            .channels
            .iter()
            .map(|c| match c.atilde {
                AtildeSource::Fixed { value, sigma } => Some(draw(value, sigma)),
                AtildeSource::Fitted => None,
            })
            .collect();
        let input = |i: usize| LevelInput { energy: energies[i], l: sys.levels[i].l };
        let m = sys.constituent_mass;
        let primary = match self.determination {
            Determination::TwoLevels { first, second } => fit_two_levels(m, input(first), input(second))?,
            Determination::OneLevel { level } => {
                fit_one_level(m, input(level), atildes[self.primary].expect("fixed channel"))?
            }
        };
        atildes
            .iter()
            .enumerate()
            .map(|(i, at)| match at {
                _ if i == self.primary => Ok(primary),
                Some(atilde) => {
                    let log = log_a_over_r_from_atilde(*atilde)?;
                    Ok(ContactFit {
                        a: primary.r * atilde_to_a_over_r(*atilde)?,
                        r: primary.r,
                        atilde: *atilde,
                        log_a_over_r: log,
                    })
                }
                None => unreachable!("validated: only the primary channel is fitted"),
            })
            .collect()
    }
}

/// Sample mean and standard deviation (n − 1), exact zero for identical samples.
pub(crate) fn mean_and_sigma(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let pivot = values[0];
    let mean_shift = values.iter().map(|v| v - pivot).sum::<f64>() / n;
    let var = values.iter().map(|v| (v - pivot - mean_shift).powi(2)).sum::<f64>() / (n - 1.0);
    (pivot + mean_shift, var.sqrt())
}

/// Fits `samples` Gaussian variations of the task's inputs.
pub fn mc_propagate(task: &FitTask, samples: usize, seed: u64) -> Result<SystemFit> {
    if samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {samples}")));
    }
    let draws = task.samples(seed, samples);
    let ok: Vec<&Vec<ContactFit>> = draws.iter().flatten().collect();
    let failed = samples - ok.len();
    if failed as f64 > MAX_FAILURE_FRACTION * samples as f64 || ok.len() < 2 {
        return Err(Error::TooManyFailures { failed, total: samples });
    }
    let sys = task.system();
    let channels = sys
        .channels
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let column = |f: fn(&ContactFit) -> f64| -> Vec<f64> { ok.iter().map(|s| f(&s[i])).collect() };
            let (r, r_sigma) = mean_and_sigma(&column(|f| f.r));
            let (atilde, atilde_sigma) = mean_and_sigma(&column(|f| f.atilde));
            let (_, a_sigma) = mean_and_sigma(&column(|f| f.a));
            let a = r * atilde_to_a_over_r(atilde)?;
            Ok(ChannelFit {
                s: c.s,
                t: c.t,
                source: c.atilde,
                result: FitResult { a, r, atilde, a_sigma, r_sigma, atilde_sigma, samples, seed },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SystemFit {
        system: sys.name.clone(),
        version: sys.version.clone(),
        seed,
        samples,
        failed,
        failure_fraction: failed as f64 / samples as f64,
        primary: task.primary(),
        channels,
    })
}
