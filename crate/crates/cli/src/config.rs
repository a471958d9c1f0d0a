//! Line-oriented `key = value` job configuration.
//!
//! A config file supplies defaults for flags the command line leaves unset;
//! explicit flags always win. The resolved configuration is echoed into a
//! `.cfg.txt` sidecar next to every produced file, so any output can be
//! reproduced from its sidecar alone.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                anyhow!(
                    "{}:{}: expected `key = value`, got `{raw}`",
                    path.display(),
                    lineno + 1
                )
            })?;
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parsed lookup; config errors name the key.
    pub fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| anyhow!("config key `{key}`: {e}")),
        }
    }
}

/// Resolved settings of one job, written verbatim to sidecars.
#[derive(Debug, Default, Clone)]
pub struct JobConfig {
    pub command: String,
    entries: Vec<(String, String)>,
}

impl JobConfig {
    pub fn new(command: &str) -> Self {
        JobConfig {
            command: command.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl std::fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self) -> String {
        let mut out = format!("command = {}\n", self.command);
        for (k, v) in &self.entries {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }

    /// Writes `<output>.cfg.txt` next to the produced file.
    pub fn write_sidecar(&self, output: &Path) -> Result<()> {
        let mut name = output
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "output".to_string());
        name.push_str(".cfg.txt");
        let sidecar: PathBuf = output.with_file_name(name);
        std::fs::write(&sidecar, self.render())
            .with_context(|| format!("cannot write sidecar {}", sidecar.display()))?;
        Ok(())
    }
}
