use std::io::Write;

use rod3d::gb::{trace_gb, GBCurve, Topology};
use rod3d::linearize::{eigen_classify, k_matrix};
use serde_json::json;

use super::{branch_label, parse_sign, resolve_params};
use crate::cli::GbArgs;
use crate::config::{resolve_f64, resolve_string, resolve_usize, Defaults};
use crate::output::{g17, write_json, OutTarget, RunScope};
use crate::{AppError, AppResult};

fn topology_label(t: Topology) -> &'static str {
    match t {
        Topology::Empty => "empty",
        Topology::Closed => "closed",
        Topology::SingleArc => "single_arc",
        Topology::TwoArcs => "two_arcs",
    }
}

fn summary(curve: &GBCurve) -> serde_json::Value {
    let fold = |f: fn(&rod3d::gb::GBPoint) -> f64, init: f64, pick: fn(f64, f64) -> f64| {
        curve.points.iter().map(f).fold(init, pick)
    };
    let extremes = if curve.points.is_empty() {
        json!(null)
    } else {
        json!({
            "theta_min": fold(|p| p.theta, f64::INFINITY, f64::min),
            "theta_max": fold(|p| p.theta, f64::NEG_INFINITY, f64::max),
            "phi_min": fold(|p| p.phi, f64::INFINITY, f64::min),
            "phi_max": fold(|p| p.phi, f64::NEG_INFINITY, f64::max),
            "Theta_min": fold(|p| p.theta_rate, f64::INFINITY, f64::min),
            "Theta_max": fold(|p| p.theta_rate, f64::NEG_INFINITY, f64::max),
        })
    };
    json!({
        "topology": topology_label(curve.topology),
        "n_points": curve.points.len(),
        "Psi": curve.psi_rate,
        "extremes": extremes,
    })
}

pub fn run(args: &GbArgs, cfg: &Defaults) -> AppResult<()> {
    let params = resolve_params(args.alpha, args.mu, cfg)?;
    let psi_rate = resolve_f64(args.psi, cfg, "Psi", None)?;
    let sign = parse_sign(&resolve_string(
        args.theta_sign.clone(),
        cfg,
        "Theta-sign",
        "+1",
    ))?;
    let n_points = resolve_usize(args.n_points, cfg, "n-points", 400)?;
    let eta = if args.eig {
        Some(resolve_f64(args.eta, cfg, "eta", None)?)
    } else {
        None
    };

    let curve = trace_gb(&params, psi_rate, sign, n_points);
    if args.require_nonempty && curve.topology == Topology::Empty {
        return Err(AppError::domain(format!(
            "the section at Psi = {psi_rate} is empty"
        )));
    }

    let out = OutTarget::parse(&args.out);
    let mut scope = RunScope::new(
        "gb",
        json!({
            "alpha": params.alpha, "mu": params.mu, "Psi": psi_rate,
            "Theta_sign": sign.as_f64(), "n_points": n_points, "eig": args.eig, "eta": eta,
        }),
    );
    let mut w = out.writer()?;
    let io = |e: std::io::Error| AppError::io(e.to_string());
    match eta {
        None => {
            writeln!(w, "phi,theta,Theta,Psi,branch").map_err(io)?;
            for pt in &curve.points {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    g17(pt.phi),
                    g17(pt.theta),
                    g17(pt.theta_rate),
                    g17(pt.psi_rate),
                    branch_label(pt.branch)
                )
                .map_err(io)?;
            }
        }
        Some(eta) => {
            writeln!(
                w,
                "phi,theta,Theta,Psi,eta,K11,K12,K21,K22,re_lp,im_lp,re_lm,im_lm,class"
            )
            .map_err(io)?;
            for pt in &curve.points {
                let k = k_matrix(pt, eta, &params).map_err(|e| AppError::domain(e.to_string()))?;
                let e = eigen_classify(&k);
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    g17(pt.phi),
                    g17(pt.theta),
                    g17(pt.theta_rate),
                    g17(pt.psi_rate),
                    g17(eta),
                    g17(k.k11),
                    g17(k.k12),
                    g17(k.k21),
                    g17(k.k22),
                    g17(e.lambda_plus.re),
                    g17(e.lambda_plus.im),
                    g17(e.lambda_minus.re),
                    g17(e.lambda_minus.im),
                    e.classification.label()
                )
                .map_err(io)?;
            }
        }
    }
    w.flush().map_err(io)?;
    drop(w);

    if let Some(path) = out.path() {
        scope.record(path);
        if let Some(summary_path) = out.sibling("summary.json") {
            write_json(&summary_path, &summary(&curve))?;
            scope.record(&summary_path);
        }
    }
    scope.finish()
}
