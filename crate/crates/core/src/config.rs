//! Run configuration: caps and defaults, optionally read from a TOML file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Dot,
    Text,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::invalid(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub max_vertices: usize,
    pub max_matrix_vertices: usize,
    pub max_census_vertices: usize,
    pub max_tau: usize,
    pub max_clique_vertices: usize,
    pub max_iso_vertices: usize,
    pub max_field_order: u32,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_vertices: 1024,
            max_matrix_vertices: 128,
            max_census_vertices: 64,
            max_tau: 12,
            max_clique_vertices: 128,
            max_iso_vertices: 256,
            max_field_order: 32,
        }
    }
}

/// Everything that can influence output besides the command itself.
/// There is no randomness anywhere, so a config fixes the output bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[derive(Default)]
pub struct RunConfig {
    /// Field order; flags override.
    pub q: Option<u32>,
    pub format: Option<OutputFormat>,
    pub caps: Caps,
}


impl RunConfig {
    pub fn from_toml(src: &str) -> Result<RunConfig> {
        let cfg: RunConfig = toml::from_str(src).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<RunConfig> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_toml(&src)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.caps;
        let all = [
            c.max_vertices,
            c.max_matrix_vertices,
            c.max_census_vertices,
            c.max_tau,
            c.max_clique_vertices,
            c.max_iso_vertices,
            c.max_field_order as usize,
        ];
        if all.contains(&0) {
            return Err(Error::invalid("caps must be positive"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_defaults() {
        let cfg = RunConfig::from_toml("q = 5\nformat = \"json\"\n[caps]\nmax_vertices = 200\n").unwrap();
        assert_eq!(cfg.q, Some(5));
        assert_eq!(cfg.format, Some(OutputFormat::Json));
        assert_eq!(cfg.caps.max_vertices, 200);
        assert_eq!(cfg.caps.max_tau, 12);
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::from_toml("[caps]\nmax_tau = 0\n").is_err());
        assert!(RunConfig::from_toml("colour = 1\n").is_err());
        assert!(RunConfig::from_toml("format = \"xml\"\n").is_err());
        assert!("pdf".parse::<OutputFormat>().is_err());
        assert_eq!("dot".parse::<OutputFormat>().unwrap(), OutputFormat::Dot);
    }
}
