//! Run manifests: the canonical record of a command invocation.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::RunCommand;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub artifact: String,
    /// Version of the halo data file, when the command reads one.
    pub data: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// The full parameter set, keys sorted.
    pub inputs: Value,
    pub seed: Option<u64>,
    pub versions: Versions,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(cmd: &RunCommand, seed: Option<u64>, data: Option<String>) -> Result<Self, CliError> {
        Ok(Self {
            command: cmd.name().to_string(),
            inputs: serde_json::to_value(cmd)?,
            seed,
            versions: Versions { artifact: env!("CARGO_PKG_VERSION").to_string(), data },
            outputs: cmd.output_paths(),
        })
    }

    pub fn to_command(&self) -> Result<RunCommand, CliError> {
        let cmd: RunCommand = serde_json::from_value(self.inputs.clone())
            .map_err(|e| CliError::Usage(format!("manifest inputs: {e}")))?;
        if cmd.name() != self.command {
            return Err(CliError::Usage(format!(
                "manifest command {:?} does not match its inputs ({:?})",
                self.command,
                cmd.name()
            )));
        }
        if self.versions.artifact != env!("CARGO_PKG_VERSION") {
            return Err(s2contact::Error::VersionMismatch {
                expected: env!("CARGO_PKG_VERSION").to_string(),
                found: self.versions.artifact.clone(),
            }
            .into());
        }
        Ok(cmd)
    }

    /// Accepts a bare manifest or a JSON report that embeds one under `manifest`.
    pub fn from_json_text(text: &str) -> Result<Self, CliError> {
        let mut value: Value =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("manifest: {e}")))?;
        if let Some(inner) = value.get_mut("manifest") {
            value = inner.take();
        }
        serde_json::from_value(value).map_err(|e| CliError::Usage(format!("manifest: {e}")))
    }
}
