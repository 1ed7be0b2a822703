//! The flat JSON schema for rod states:
//! `{x, y, z, w, psi, Psi, theta, Theta, phi, eta}`.

use rod3d::model::ScaledState;
use serde::{Deserialize, Serialize};

use crate::{AppError, AppResult};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JsonState {
    #[serde(default)]
    pub x: f64,
    #[serde(default)]
    pub y: f64,
    #[serde(default)]
    pub z: f64,
    #[serde(default)]
    pub w: f64,
    #[serde(default)]
    pub psi: f64,
    #[serde(rename = "Psi")]
    pub psi_rate: f64,
    pub theta: f64,
    #[serde(rename = "Theta")]
    pub theta_rate: f64,
    pub phi: f64,
    pub eta: f64,
}

impl From<ScaledState> for JsonState {
    fn from(s: ScaledState) -> Self {
        JsonState {
            x: s.x,
            y: s.y,
            z: s.z,
            w: s.w,
            psi: s.psi,
            psi_rate: s.psi_rate,
            theta: s.theta,
            theta_rate: s.theta_rate,
            phi: s.phi,
            eta: s.eta,
        }
    }
}

impl From<JsonState> for ScaledState {
    fn from(j: JsonState) -> Self {
        ScaledState {
            x: j.x,
            y: j.y,
            z: j.z,
            w: j.w,
            psi: j.psi,
            psi_rate: j.psi_rate,
            theta: j.theta,
            theta_rate: j.theta_rate,
            phi: j.phi,
            eta: j.eta,
        }
    }
}

/// Parse `--ic`: inline JSON, or `@path` / bare path to a JSON file.
pub fn parse_ic(arg: &str) -> AppResult<ScaledState> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        let path = arg.strip_prefix('@').unwrap_or(arg);
        std::fs::read_to_string(path)
            .map_err(|e| AppError::usage(format!("cannot read initial condition {path}: {e}")))?
    };
    let state: JsonState = serde_json::from_str(&text)
        .map_err(|e| AppError::usage(format!("initial condition: {e}")))?;
    Ok(state.into())
}
