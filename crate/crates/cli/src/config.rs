//! Flat `key = value` configuration files mirroring the flag names.
//! Flags always win over config values.

use std::collections::HashMap;
use std::path::Path;

use crate::commands::CliError;

#[derive(Debug, Default)]
pub struct ConfigMap(HashMap<String, String>);

impl ConfigMap {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Parse(format!(
                    "{}:{}: expected `key = value`, got {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigMap(map))
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                CliError::Parse(format!("config key {key} has unparseable value {raw:?}"))
            }),
        }
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.parsed(key)
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.parsed(key)
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.parsed(key)
    }

    pub fn u8(&self, key: &str) -> Result<Option<u8>, CliError> {
        self.parsed(key)
    }
}

/// Flag value if present, otherwise the config value.
pub fn resolve<T>(flag: Option<T>, config: Result<Option<T>, CliError>) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => config,
    }
}
