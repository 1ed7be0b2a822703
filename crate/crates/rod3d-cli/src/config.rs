//! JSON config files supplying defaults for any flag; explicit flags win.

use std::path::Path;

use serde_json::{Map, Value};

use crate::{AppError, AppResult};

/// Flag defaults loaded from `--config`. Keys are the long flag names
/// (`alpha`, `mu`, `Psi`, ...); values are scalars or strings.
#[derive(Default, Clone)]
pub struct Defaults(Map<String, Value>);

impl Defaults {
    pub fn load(path: Option<&Path>) -> AppResult<Self> {
        let Some(path) = path else {
            return Ok(Defaults::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| AppError::usage(format!("config {}: {e}", path.display())))?;
        match value {
            Value::Object(map) => Ok(Defaults(map)),
            _ => Err(AppError::usage("config file must hold a JSON object")),
        }
    }

    pub fn f64(&self, key: &str) -> AppResult<Option<f64>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| AppError::usage(format!("config key {key} is not a number"))),
        }
    }

    pub fn string(&self, key: &str) -> Option<String> {
        self.0.get(key).and_then(|v| v.as_str()).map(str::to_string)
    }

    pub fn usize(&self, key: &str) -> AppResult<Option<usize>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|u| Some(u as usize))
                .ok_or_else(|| AppError::usage(format!("config key {key} is not an integer"))),
        }
    }
}

/// Flag value, falling back to the config, then to a default.
pub fn resolve_f64(
    flag: Option<f64>,
    cfg: &Defaults,
    key: &str,
    default: Option<f64>,
) -> AppResult<f64> {
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(v) = cfg.f64(key)? {
        return Ok(v);
    }
    default.ok_or_else(|| AppError::usage(format!("missing required value --{key}")))
}

pub fn resolve_usize(
    flag: Option<usize>,
    cfg: &Defaults,
    key: &str,
    default: usize,
) -> AppResult<usize> {
    if let Some(v) = flag {
        return Ok(v);
    }
    Ok(cfg.usize(key)?.unwrap_or(default))
}

pub fn resolve_string(flag: Option<String>, cfg: &Defaults, key: &str, default: &str) -> String {
    flag.or_else(|| cfg.string(key))
        .unwrap_or_else(|| default.to_string())
}
