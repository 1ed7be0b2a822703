use std::io::Write;

use rod3d::critical::critical_set;
use rod3d::gb::{theta_root, Branch};
use rod3d::linearize::{asymptotic_quartic, det_k_quartic};
use serde_json::json;

use super::{branch_label, resolve_params};
use crate::cli::QuarticArgs;
use crate::config::{resolve_f64, resolve_usize, Defaults};
use crate::output::{g17, OutTarget, RunScope};
use crate::{AppError, AppResult};

pub fn run(args: &QuarticArgs, cfg: &Defaults) -> AppResult<()> {
    let params = resolve_params(args.alpha, args.mu, cfg)?;
    let eta = resolve_f64(args.eta, cfg, "eta", None)?;
    let n_phi = resolve_usize(args.n_phi, cfg, "n-phi", 201)?;
    let asymptotic = match args.asymptotic {
        Some(v) => Some(v),
        None => cfg.f64("asymptotic")?,
    };

    let cs = critical_set(&params);
    let pg = cs.paradox.ok_or_else(|| {
        AppError::domain(format!("no paradox boundary: mu = {} < mu_P", params.mu))
    })?;

    let out = OutTarget::parse(&args.out);
    let mut scope = RunScope::new(
        "quartic",
        json!({
            "alpha": params.alpha, "mu": params.mu, "eta": eta,
            "n_phi": n_phi, "asymptotic": asymptotic,
        }),
    );
    let mut w = out.writer()?;
    let io = |e: std::io::Error| AppError::io(e.to_string());
    writeln!(
        w,
        "phi,cosphi,branch,theta,eta,method,Psi,Theta,det_residual"
    )
    .map_err(io)?;

    let span = pg.phi_2 - pg.phi_1;
    for i in 0..n_phi {
        // Stay strictly inside the boundary arc; the endpoints are the
        // degenerate tangency.
        let phi = pg.phi_1 + span * (i as f64 + 0.5) / n_phi as f64;
        let cosphi = phi.cos();
        for branch in [Branch::Lower, Branch::Upper] {
            let Some(theta) = theta_root(phi, branch, &params) else {
                continue;
            };
            let analysis = det_k_quartic(theta, phi, eta, &params)
                .map_err(|e| AppError::domain(e.to_string()))?;
            for root in &analysis.admissible {
                writeln!(
                    w,
                    "{},{},{},{},{},exact,{},{},{}",
                    g17(phi),
                    g17(cosphi),
                    branch_label(branch),
                    g17(theta),
                    g17(eta),
                    g17(root.psi_rate),
                    g17(root.theta_rate),
                    g17(root.det_residual)
                )
                .map_err(io)?;
            }
        }
        if let Some(eps2mu) = asymptotic {
            for psi_rate in &asymptotic_quartic(eps2mu, cosphi, &params).roots {
                writeln!(
                    w,
                    "{},{},,,,asymptotic,{},,",
                    g17(phi),
                    g17(cosphi),
                    g17(*psi_rate)
                )
                .map_err(io)?;
            }
        }
    }
    w.flush().map_err(io)?;
    drop(w);
    if let Some(path) = out.path() {
        scope.record(path);
    }
    scope.finish()
}
