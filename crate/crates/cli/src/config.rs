//! Plain `key=value` parameter files.
//!
//! Keys are the long flag names without the leading dashes; `_` and `-` are
//! interchangeable. Lines starting with `#` are comments.

use std::collections::BTreeMap;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "variant",
    "v0",
    "v0i",
    "r0",
    "a",
    "alpha-i",
    "q",
    "hbar2-over-2m",
    "n-max",
    "out",
    "format",
    "r-min",
    "r-max",
    "steps",
];

/// Parsed file contents. Later lines override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", idx + 1)))?;
            let key = key.trim().to_ascii_lowercase().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", idx + 1)));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Value for `key` run through `parse`, if present.
    pub fn get<T>(&self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, CliError> {
        debug_assert!(KEYS.contains(&key));
        self.entries
            .get(key)
            .map(|v| parse(v).map_err(|e| CliError::Usage(format!("config key `{key}`: {e}"))))
            .transpose()
    }
}
