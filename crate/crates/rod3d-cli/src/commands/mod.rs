//! One module per subcommand, plus shared flag parsing.

pub mod critical;
pub mod gb;
pub mod modes;
pub mod quartic;
pub mod separatrix;
pub mod simulate;

use rod3d::gb::Branch;
use rod3d::model::RodParams;
use rod3d::Sign;

use crate::config::{resolve_f64, Defaults};
use crate::{AppError, AppResult};

pub fn resolve_params(alpha: Option<f64>, mu: Option<f64>, cfg: &Defaults) -> AppResult<RodParams> {
    let alpha = resolve_f64(alpha, cfg, "alpha", None)?;
    let mu = resolve_f64(mu, cfg, "mu", None)?;
    RodParams::new(alpha, mu).map_err(|e| AppError::usage(e.to_string()))
}

pub fn parse_sign(arg: &str) -> AppResult<Sign> {
    match arg {
        "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
        "-1" | "-" | "minus" => Ok(Sign::Minus),
        other => Err(AppError::usage(format!(
            "sign must be +1 or -1, got {other}"
        ))),
    }
}

pub fn parse_branch(arg: &str) -> AppResult<Branch> {
    match arg {
        "lower" | "minus" => Ok(Branch::Lower),
        "upper" | "plus" => Ok(Branch::Upper),
        other => Err(AppError::usage(format!(
            "branch must be lower or upper, got {other}"
        ))),
    }
}

pub fn branch_label(branch: Branch) -> &'static str {
    match branch {
        Branch::Lower => "minus",
        Branch::Upper => "plus",
    }
}

/// Parse `min:max`.
pub fn parse_range(arg: &str) -> AppResult<(f64, f64)> {
    let (a, b) = arg
        .split_once(':')
        .ok_or_else(|| AppError::usage(format!("range must be min:max, got {arg}")))?;
    let lo: f64 = a
        .parse()
        .map_err(|_| AppError::usage(format!("bad range bound {a}")))?;
    let hi: f64 = b
        .parse()
        .map_err(|_| AppError::usage(format!("bad range bound {b}")))?;
    Ok((lo, hi))
}
