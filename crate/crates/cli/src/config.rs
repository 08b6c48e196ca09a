//! Optional TOML configuration. Command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const CONFIG_ENV: &str = "SUQ_QES_CONFIG";

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default, rename = "match")]
    pub matching: MatchConfig,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    pub step: Option<f64>,
    pub tolerance: Option<f64>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchConfig {
    pub theta_decimals: Option<u32>,
    pub exact: Option<bool>,
}

impl Config {
    /// Load from `explicit`, else from `$SUQ_QES_CONFIG`, else defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self, String> {
        let path: Option<PathBuf> = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections() {
        let c: Config = toml::from_str("[oracle]\nstep = 5e-4\n[match]\nexact = true\n").unwrap();
        assert_eq!(c.oracle.step, Some(5e-4));
        assert_eq!(c.matching.exact, Some(true));
        assert!(toml::from_str::<Config>("[oracle]\nstpe = 1.0\n").is_err());
    }
}
