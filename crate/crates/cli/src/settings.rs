//! Flag values merged over an optional `key=value` config file.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::CliError;

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

#[derive(Debug, Default)]
pub struct Settings {
    file: HashMap<String, String>,
    degrees: bool,
}

impl Settings {
    pub fn load(path: Option<&Path>, degrees: bool) -> Result<Self, CliError> {
        let mut file = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("config {} line {}: expected key=value", path.display(), i + 1))
                })?;
                file.insert(normalize(k), v.trim().to_string());
            }
        }
        Ok(Self { file, degrees })
    }

    pub fn text(&self, key: &str, flag: Option<&str>) -> Option<String> {
        flag.map(str::to_string).or_else(|| self.file.get(key).cloned())
    }

    fn number(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("config key {key}: '{v}' is not a number")))
            })
            .transpose()
    }

    pub fn real(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>, CliError> {
        self.number(key, flag)
    }

    /// Like [`Settings::real`], converted from degrees when `--degrees` is set.
    pub fn angle(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>, CliError> {
        Ok(self.number(key, flag)?.map(|v| self.to_radians(v)))
    }

    pub fn to_radians(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    pub fn count(&self, key: &str, flag: Option<usize>) -> Result<Option<usize>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("config key {key}: '{v}' is not a count")))
            })
            .transpose()
    }
}
