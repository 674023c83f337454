use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::OutputFormat;
use crate::characters::CACHE_ENV;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Optional TOML configuration file. Command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub output: Option<OutputFormat>,
    #[serde(default)]
    pub caps: Caps,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub set_partition_n: Option<usize>,
    pub brute_force_d: Option<usize>,
    pub bernoulli_max: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn limits(&self) -> Result<Limits> {
        let mut limits = Limits::DEFAULT;
        for (name, value, slot) in [
            (
                "set_partition_n",
                self.caps.set_partition_n,
                &mut limits.set_partition_n,
            ),
            (
                "brute_force_d",
                self.caps.brute_force_d,
                &mut limits.brute_force_d,
            ),
            (
                "bernoulli_max",
                self.caps.bernoulli_max,
                &mut limits.bernoulli_max,
            ),
        ] {
            if let Some(v) = value {
                if v == 0 {
                    return Err(Error::Parse(format!("caps.{name} must be positive")));
                }
                *slot = v;
            }
        }
        Ok(limits)
    }

    /// Cache directory: the config value, then `$STRATAVOL_CACHE`, then
    /// `$XDG_CACHE_HOME/stratavol`, then `$HOME/.cache/stratavol`.
    pub fn cache_dir(&self) -> Option<PathBuf> {
        if let Some(dir) = &self.cache_dir {
            return Some(dir.clone());
        }
        let env = |k: &str| {
            std::env::var_os(k)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        };
        env(CACHE_ENV)
            .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("stratavol")))
            .or_else(|| env("HOME").map(|d| d.join(".cache").join("stratavol")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_caps_and_rejects_unknown_keys() {
        let c: Config =
            toml::from_str("output = \"json\"\n[caps]\nset_partition_n = 10\n").unwrap();
        assert_eq!(c.output, Some(OutputFormat::Json));
        assert_eq!(c.limits().unwrap().set_partition_n, 10);
        assert!(toml::from_str::<Config>("colour = 1").is_err());
        let zero: Config = toml::from_str("[caps]\nbrute_force_d = 0").unwrap();
        assert!(zero.limits().is_err());
    }
}
