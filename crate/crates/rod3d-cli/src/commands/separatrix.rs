use std::io::Write;

use rod3d::gb::gb_point_at;
use rod3d::sim::{find_separatrix, FanSpec, SeparatrixError, SimConfig};
use serde_json::json;

use super::{branch_label, parse_branch, parse_sign, resolve_params};
use crate::cli::SeparatrixArgs;
use crate::config::{resolve_f64, resolve_string, resolve_usize, Defaults};
use crate::output::{OutTarget, RunScope};
use crate::{AppError, AppResult};

pub fn run(args: &SeparatrixArgs, cfg: &Defaults) -> AppResult<()> {
    let params = resolve_params(args.alpha, args.mu, cfg)?;
    let psi_rate = resolve_f64(args.psi, cfg, "Psi", None)?;
    let phi = resolve_f64(args.phi, cfg, "phi", None)?;
    let branch = parse_branch(&resolve_string(args.branch.clone(), cfg, "branch", "lower"))?;
    let sign = parse_sign(&resolve_string(
        args.theta_sign.clone(),
        cfg,
        "Theta-sign",
        "+1",
    ))?;
    let eta = resolve_f64(args.eta, cfg, "eta", None)?;

    let point = gb_point_at(&params, psi_rate, phi, branch, sign).ok_or_else(|| {
        AppError::domain(format!(
            "no manifold point at phi = {phi} on the {} branch for Psi = {psi_rate}",
            branch_label(branch)
        ))
    })?;

    let mut fan = FanSpec::new(eta);
    fan.delta = resolve_f64(args.delta, cfg, "delta", Some(fan.delta))?;
    fan.n_seeds = resolve_usize(args.n_seeds, cfg, "n-seeds", fan.n_seeds)?;
    fan.angle_tol = resolve_f64(args.angle_tol, cfg, "angle-tol", Some(fan.angle_tol))?;
    let sim_cfg = SimConfig {
        max_time: resolve_f64(
            args.max_time,
            cfg,
            "max-time",
            Some(SimConfig::default().max_time),
        )?,
        ..SimConfig::default()
    };

    let res = find_separatrix(&point, &params, &sim_cfg, &fan).map_err(|e| match e {
        SeparatrixError::Sim(inner) => AppError::domain(inner.to_string()),
        other => AppError::domain(other.to_string()),
    })?;

    let value = json!({
        "base_point": {
            "theta": point.theta,
            "phi": point.phi,
            "Theta": point.theta_rate,
            "Psi": point.psi_rate,
            "branch": branch_label(point.branch),
        },
        "eta": eta,
        "delta": fan.delta,
        "gamma": res.gamma,
        "direction_pb": res.direction,
        "designated_eigvec_pb": res.designated_eigvec,
        "angle_error_rad": res.angle_error,
        "angle_error_deg": res.angle_error.to_degrees(),
        "classification": res.eigen.classification.label(),
        "eigenvalues": {
            "lambda_plus": { "re": res.eigen.lambda_plus.re, "im": res.eigen.lambda_plus.im },
            "lambda_minus": { "re": res.eigen.lambda_minus.re, "im": res.eigen.lambda_minus.im },
        },
    });

    let out = OutTarget::parse(&args.out);
    let mut scope = RunScope::new(
        "separatrix",
        json!({
            "alpha": params.alpha, "mu": params.mu, "Psi": psi_rate, "phi": phi,
            "branch": branch_label(branch), "Theta_sign": sign.as_f64(), "eta": eta,
            "delta": fan.delta, "n_seeds": fan.n_seeds, "angle_tol": fan.angle_tol,
        }),
    );
    let mut w = out.writer()?;
    let text = format!("{}\n", serde_json::to_string_pretty(&value).unwrap());
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| AppError::io(e.to_string()))?;
    drop(w);
    if let Some(path) = out.path() {
        scope.record(path);
    }
    scope.finish()
}
