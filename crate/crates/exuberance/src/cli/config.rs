//! Flat key-value config files with `[section]` headers, used by the
//! pipeline command.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Parsed config: `section -> key -> value`. Lines are `key = value`,
/// `#` starts a comment, keys are unique within their section.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::from("");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| bad(lineno, "unterminated [section]"))?;
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(lineno, "expected key = value"))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            let section = sections.entry(current.clone()).or_default();
            if section.insert(key.clone(), value).is_some() {
                return Err(bad(lineno, &format!("duplicate key '{key}'")));
            }
        }
        Ok(Self { sections })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(String::as_str)
    }

    pub fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key)
            .ok_or_else(|| Error::BadConfig(format!("missing '{key}' in section [{section}]")))
    }

    pub fn has_section(&self, section: &str) -> bool {
        self.sections.contains_key(section)
    }

    /// Keys in `section` beginning with `prefix.`, with the prefix
    /// stripped, in file-independent sorted order.
    pub fn prefixed(&self, section: &str, prefix: &str) -> Vec<(String, String)> {
        let Some(map) = self.sections.get(section) else {
            return Vec::new();
        };
        let dotted = format!("{prefix}.");
        map.iter()
            .filter_map(|(k, v)| {
                k.strip_prefix(&dotted)
                    .map(|name| (name.to_string(), v.clone()))
            })
            .collect()
    }
}

fn bad(lineno: usize, msg: &str) -> Error {
    Error::BadConfig(format!("line {}: {msg}", lineno + 1))
}
