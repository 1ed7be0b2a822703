use std::io::Write;

use rod3d::modes::{sample_surfaces, AxisSpec, GridSpec};
use serde_json::json;

use super::{parse_range, resolve_params};
use crate::cli::ModesArgs;
use crate::config::{resolve_f64, resolve_string, Defaults};
use crate::output::{g17, OutTarget, RunScope};
use crate::{AppError, AppResult};

fn parse_grid(arg: &str) -> AppResult<(usize, usize, usize)> {
    let parts: Vec<&str> = arg.split('x').collect();
    if parts.len() != 3 {
        return Err(AppError::usage(format!("grid must be NxNxN, got {arg}")));
    }
    let mut n = [0usize; 3];
    for (slot, p) in n.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| AppError::usage(format!("bad grid size {p}")))?;
    }
    Ok((n[0], n[1], n[2]))
}

pub fn run(args: &ModesArgs, cfg: &Defaults) -> AppResult<()> {
    let params = resolve_params(args.alpha, args.mu, cfg)?;
    let psi_rate = resolve_f64(args.psi, cfg, "Psi", None)?;

    let default = GridSpec::default();
    let grid_arg = resolve_string(args.grid.clone(), cfg, "grid", "201x201x201");
    let (nt, np, nr) = parse_grid(&grid_arg)?;
    let axis =
        |range: &Option<String>, key: &str, fallback: AxisSpec, n: usize| -> AppResult<AxisSpec> {
            let arg = range.clone().or_else(|| cfg.string(key));
            Ok(match arg {
                Some(r) => {
                    let (lo, hi) = parse_range(&r)?;
                    AxisSpec::new(lo, hi, n)
                }
                None => AxisSpec::new(fallback.min, fallback.max, n),
            })
        };
    let spec = GridSpec {
        theta: axis(&args.theta_range, "theta-range", default.theta, nt)?,
        phi: axis(&args.phi_range, "phi-range", default.phi, np)?,
        theta_rate: axis(
            &args.theta_rate_range,
            "Theta-range",
            default.theta_rate,
            nr,
        )?,
        cell_cap: args.cell_cap.unwrap_or(default.cell_cap),
    };

    let grid =
        sample_surfaces(&params, psi_rate, &spec).map_err(|e| AppError::domain(e.to_string()))?;

    let out = OutTarget::parse(&args.out);
    let mut scope = RunScope::new(
        "modes",
        json!({
            "alpha": params.alpha, "mu": params.mu, "Psi": psi_rate,
            "grid": format!("{nt}x{np}x{nr}"),
            "theta_range": [spec.theta.min, spec.theta.max],
            "phi_range": [spec.phi.min, spec.phi.max],
            "Theta_range": [spec.theta_rate.min, spec.theta_rate.max],
        }),
    );
    let mut w = out.writer()?;
    let io = |e: std::io::Error| AppError::io(e.to_string());
    writeln!(w, "theta,phi,Theta,Psi,b,p,mode").map_err(io)?;
    let psi_str = g17(psi_rate);
    for i in 0..spec.theta.n {
        let theta_str = g17(spec.theta.value(i));
        for j in 0..spec.phi.n {
            let phi_str = g17(spec.phi.value(j));
            let p = grid.p_at(i, j);
            let p_str = g17(p);
            for k in 0..spec.theta_rate.n {
                let b = grid.b_at(i, k);
                let mode = grid.mode_labels[grid.cell_index(i, j, k)];
                writeln!(
                    w,
                    "{theta_str},{phi_str},{},{psi_str},{},{p_str},{}",
                    g17(spec.theta_rate.value(k)),
                    g17(b),
                    mode.label()
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
