//! Configuration files: a JSON object keyed by `NetworkConfig` field names.
//! Every key is optional, unknown keys are rejected, and an empty file means
//! all defaults.

use std::fs;
use std::path::Path;

use dude_core::config::NetworkConfig;
use serde_json::Value;

use crate::error::SimError;
use crate::format::to_json_string;

pub fn parse_config(text: &str) -> Result<NetworkConfig, SimError> {
    let config: NetworkConfig = if text.trim().is_empty() {
        NetworkConfig::default()
    } else {
        serde_json::from_str(text).map_err(SimError::Parse)?
    };
    config.validate().map_err(SimError::Validation)?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<NetworkConfig, SimError> {
    let text = fs::read_to_string(path).map_err(|source| SimError::ReadConfig {
        path: path.to_owned(),
        source,
    })?;
    parse_config(&text)
}

pub fn config_to_json(config: &NetworkConfig) -> String {
    to_json_string(config).expect("config serializes")
}

pub fn save_config(path: &Path, config: &NetworkConfig) -> Result<(), SimError> {
    fs::write(path, config_to_json(config)).map_err(|source| SimError::Write {
        path: path.to_owned(),
        source,
    })
}

/// Return a copy of `config` with one field replaced. The value is read as
/// JSON when possible (numbers, booleans, null) and as a bare string otherwise.
pub fn with_field(config: &NetworkConfig, param: &str, raw: &str) -> Result<NetworkConfig, SimError> {
    let sweep_err = |reason: String| SimError::Sweep {
        param: param.to_owned(),
        value: raw.to_owned(),
        reason,
    };
    let mut doc = serde_json::to_value(config).expect("config serializes");
    let fields = doc.as_object_mut().expect("config is an object");
    if !fields.contains_key(param) {
        return Err(sweep_err("no such config field".into()));
    }
    let value = serde_json::from_str::<Value>(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    fields.insert(param.to_owned(), value);
    let updated: NetworkConfig = serde_json::from_value(doc).map_err(|e| sweep_err(e.to_string()))?;
    updated.validate().map_err(|e| sweep_err(e.to_string()))?;
    Ok(updated)
}
