//! Halo-system descriptions: core quantum numbers, constituent mass, contact
//! channels and measured levels. Stored as versioned TOML.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a channel's reduced scattering length comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AtildeSource {
    /// Determined by fitting the channel's measured levels.
    Fitted,
    /// Taken as a Gaussian input with 1σ width `sigma`.
    Fixed { value: f64, sigma: f64 },
}

/// A two-nucleon spin/isospin channel coupled by the contact interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub s: u8,
    pub t: u8,
    pub atilde: AtildeSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasuredLevel {
    /// MeV relative to the three-body threshold.
    pub energy: f64,
    pub sigma: f64,
    /// Index into [`HaloSystem::channels`].
    pub channel: usize,
    pub l: u32,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaloSystem {
    pub name: String,
    pub version: String,
    pub core_two_j: u32,
    pub core_parity: i8,
    /// MeV.
    pub constituent_mass: f64,
    pub channels: Vec<Channel>,
    #[serde(default)]
    pub levels: Vec<MeasuredLevel>,
}

const BUILTIN: [(&str, &str); 3] = [
    ("he6", include_str!("../../data/he6.toml")),
    ("li11", include_str!("../../data/li11.toml")),
    ("li6", include_str!("../../data/li6.toml")),
];

impl HaloSystem {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let system: Self = toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        system.validate()?;
        Ok(system)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// One of the shipped systems: `he6`, `li11` or `li6`.
    pub fn builtin(key: &str) -> Result<Self> {
        let (_, text) = BUILTIN
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| Error::Schema(format!("no built-in system named {key:?}")))?;
        Self::from_toml_str(text)
    }

    pub fn builtin_keys() -> impl Iterator<Item = &'static str> {
        BUILTIN.iter().map(|(k, _)| *k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.constituent_mass > 0.0 && self.constituent_mass.is_finite()) {
            return Err(Error::Schema(format!("constituent_mass must be positive, got {}", self.constituent_mass)));
        }
        if self.core_parity != 1 && self.core_parity != -1 {
            return Err(Error::Schema(format!("core_parity must be ±1, got {}", self.core_parity)));
        }
        if self.channels.is_empty() {
            return Err(Error::Schema("at least one channel is required".into()));
        }
        for c in &self.channels {
            if c.s > 1 || c.t > 1 {
                return Err(Error::Schema(format!("S and T must be 0 or 1, got S = {}, T = {}", c.s, c.t)));
            }
            if (c.s + c.t) % 2 == 0 {
                return Err(Error::SelectionRule { s: c.s, t: c.t });
            }
            if let AtildeSource::Fixed { value, sigma } = c.atilde {
                if value == 0.0 || !value.is_finite() || !(sigma >= 0.0) {
                    return Err(Error::Schema(format!("fixed ã needs finite nonzero value and σ ≥ 0, got {value} ± {sigma}")));
                }
            }
        }
        for lvl in &self.levels {
            if lvl.channel >= self.channels.len() {
                return Err(Error::Schema(format!("level {:?} refers to missing channel {}", lvl.label, lvl.channel)));
            }
            if !(lvl.sigma >= 0.0) || !lvl.energy.is_finite() {
                return Err(Error::Schema(format!("level {:?} needs finite energy and σ ≥ 0", lvl.label)));
            }
        }
        Ok(())
    }

    pub fn levels_in(&self, channel: usize) -> impl Iterator<Item = &MeasuredLevel> {
        self.levels.iter().filter(move |l| l.channel == channel)
    }
}
