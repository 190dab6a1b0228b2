use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::SolverConfig;
use crate::error::{Error, Result};
use crate::initial::InitialConditionSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Default output directory when none is given on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    /// Write the final state as a binary checkpoint.
    #[serde(default = "yes")]
    pub checkpoint: bool,
}

fn yes() -> bool {
    true
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: None, checkpoint: true }
    }
}

/// A complete run description, as read from a TOML file.
///
/// ```toml
/// schema_version = 1
///
/// [solver]
/// n = 2
/// resolution = 64
/// alpha = "5/4"
/// t_end = 1.0
///
/// [initial]
/// kind = "random_band"
/// seed = 7
/// band = [1, 4]
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub solver: SolverConfig,
    pub initial: InitialConditionSpec,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn new(solver: SolverConfig, initial: InitialConditionSpec) -> Self {
        Self { schema_version: SCHEMA_VERSION, solver, initial, output: OutputConfig::default() }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        // Check the version first so an old file gets a useful message rather
        // than a complaint about some renamed key.
        if let Ok(table) = text.parse::<toml::Table>() {
            match table.get("schema_version").and_then(|v| v.as_integer()) {
                Some(v) if v == SCHEMA_VERSION as i64 => {}
                Some(v) => {
                    return Err(Error::config(
                        "schema_version",
                        format!("{v} is not supported (expected {SCHEMA_VERSION})"),
                    ))
                }
                None => return Err(Error::config("schema_version", "missing")),
            }
        }
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::config("schema_version", format!("expected {SCHEMA_VERSION}")));
        }
        self.solver.validate()?;
        self.initial.validate(self.solver.resolution)
    }
}
