use std::io::Write;

use rod3d::sim::{integrate_desingularized, integrate_slipping, SimConfig, TrajectoryRecord};
use serde_json::json;

use super::resolve_params;
use crate::cli::SimulateArgs;
use crate::config::{resolve_f64, resolve_usize, Defaults};
use crate::output::{g17, write_json, OutTarget, RunScope};
use crate::state_json::{parse_ic, JsonState};
use crate::{AppError, AppResult};

fn events_json(record: &TrajectoryRecord) -> serde_json::Value {
    json!({
        "verdict": record.verdict.label(),
        "events": record
            .events
            .iter()
            .map(|ev| {
                json!({
                    "kind": ev.kind.label(),
                    "s": ev.s,
                    "state": JsonState::from(ev.state),
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn run(args: &SimulateArgs, cfg: &Defaults) -> AppResult<()> {
    let params = resolve_params(args.alpha, args.mu, cfg)?;
    let ic_arg = args
        .ic
        .clone()
        .or_else(|| cfg.string("ic"))
        .ok_or_else(|| AppError::usage("missing required value --ic"))?;
    let ic = parse_ic(&ic_arg)?;

    let defaults = SimConfig::default();
    let sim_cfg = SimConfig {
        max_time: resolve_f64(args.max_time, cfg, "max-time", Some(defaults.max_time))?,
        abs_tol: resolve_f64(args.abs_tol, cfg, "abs-tol", Some(defaults.abs_tol))?,
        rel_tol: resolve_f64(args.rel_tol, cfg, "rel-tol", Some(defaults.rel_tol))?,
        event_tol: resolve_f64(args.event_tol, cfg, "event-tol", Some(defaults.event_tol))?,
        output_stride: resolve_usize(args.stride, cfg, "stride", defaults.output_stride)?,
        ..defaults
    };

    let record = if args.physical_time {
        integrate_slipping(&ic, &params, &sim_cfg)
    } else {
        integrate_desingularized(&ic, &params, &sim_cfg)
    }
    .map_err(|e| AppError::domain(e.to_string()))?;

    let out = OutTarget::parse(&args.out);
    let mut scope = RunScope::new(
        "simulate",
        json!({
            "alpha": params.alpha, "mu": params.mu,
            "ic": JsonState::from(ic),
            "physical_time": args.physical_time,
            "max_time": sim_cfg.max_time,
            "abs_tol": sim_cfg.abs_tol, "rel_tol": sim_cfg.rel_tol,
            "event_tol": sim_cfg.event_tol, "stride": sim_cfg.output_stride,
        }),
    );
    let mut w = out.writer()?;
    let io = |e: std::io::Error| AppError::io(e.to_string());
    writeln!(w, "s,t,eta,phi,psi,Psi,theta,Theta,b,p,Fz").map_err(io)?;
    for sm in &record.samples {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            g17(sm.s),
            g17(sm.t),
            g17(sm.state.eta),
            g17(sm.state.phi),
            g17(sm.state.psi),
            g17(sm.state.psi_rate),
            g17(sm.state.theta),
            g17(sm.state.theta_rate),
            g17(sm.b),
            g17(sm.p),
            g17(sm.f_z)
        )
        .map_err(io)?;
    }
    w.flush().map_err(io)?;
    drop(w);

    eprintln!("verdict: {}", record.verdict.label());
    if let Some(path) = out.path() {
        scope.record(path);
        if let Some(events_path) = out.sibling("events.json") {
            write_json(&events_path, &events_json(&record))?;
            scope.record(&events_path);
        }
    }
    scope.finish()
}
