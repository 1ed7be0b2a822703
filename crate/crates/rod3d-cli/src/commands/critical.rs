use std::fmt::Write as _;

use rod3d::critical::{classify_case, critical_set, CaseId, CriticalSet, KinematicCase, Mechanism};
use serde_json::{json, Map, Value};

use super::resolve_params;
use crate::cli::CriticalArgs;
use crate::config::Defaults;
use crate::output::{g17, OutTarget, RunScope};
use crate::{AppError, AppResult};

pub fn case_label(case: &KinematicCase) -> String {
    let mech = match case.mechanism {
        Mechanism::I => "I",
        Mechanism::II => "II",
        Mechanism::III => "III",
    };
    let id = match &case.case {
        CaseId::Case1 => "1".to_string(),
        CaseId::Case2 => "2".to_string(),
        CaseId::Case3 => "3".to_string(),
        CaseId::Case4 => "4".to_string(),
        CaseId::Case5 => "5".to_string(),
        CaseId::Case6 => "6".to_string(),
        CaseId::Case7 => "7".to_string(),
        CaseId::Boundary(tag) => {
            let mut parts = Vec::new();
            if let Some(m) = &tag.mu {
                parts.push(match m {
                    rod3d::critical::MuBoundary::AtMuP => "mu=mu_P",
                    rod3d::critical::MuBoundary::AtMuL => "mu=mu_L",
                });
            }
            if let Some(p) = &tag.psi {
                parts.push(match p {
                    rod3d::critical::PsiBoundary::AtPsiL => "|Psi|=Psi_L",
                    rod3d::critical::PsiBoundary::AtPsi1 => "|Psi|=Psi_1",
                    rod3d::critical::PsiBoundary::AtPsi2 => "|Psi|=Psi_2",
                });
            }
            format!("boundary({})", parts.join(", "))
        }
    };
    format!("{id} (mechanism {mech})")
}

/// The fixed JSON schema: absent members omitted.
pub fn critical_json(cs: &CriticalSet) -> Value {
    let mut map = Map::new();
    let mut put = |k: &str, v: f64| {
        map.insert(k.to_string(), json!(v));
    };
    put("mu_P", cs.mu_p);
    put("mu_C", cs.mu_c);
    put("mu_L", cs.mu_l);
    put("theta_P", cs.theta_p);
    put("theta_L", cs.theta_l);
    put("Psi_L", cs.psi_l);
    put("Psi_P", cs.psi_p);
    if let Some(pg) = &cs.paradox {
        put("theta_1", pg.theta_1);
        put("theta_2", pg.theta_2);
        put("phi_1", pg.phi_1);
        put("phi_2", pg.phi_2);
        put("Psi_1", pg.psi_1);
        put("Psi_2", pg.psi_2);
    }
    Value::Object(map)
}

pub fn render_table(cs: &CriticalSet, case: Option<&KinematicCase>) -> String {
    let mut buf = String::new();
    let line = |buf: &mut String, k: &str, v: f64| writeln!(buf, "{k:<8} = {}", g17(v)).unwrap();
    line(&mut buf, "mu_P", cs.mu_p);
    line(&mut buf, "mu_C", cs.mu_c);
    line(&mut buf, "mu_L", cs.mu_l);
    line(&mut buf, "theta_P", cs.theta_p);
    line(&mut buf, "theta_L", cs.theta_l);
    line(&mut buf, "Psi_L", cs.psi_l);
    line(&mut buf, "Psi_P", cs.psi_p);
    match &cs.paradox {
        Some(pg) => {
            line(&mut buf, "theta_1", pg.theta_1);
            line(&mut buf, "theta_2", pg.theta_2);
            line(&mut buf, "phi_1", pg.phi_1);
            line(&mut buf, "phi_2", pg.phi_2);
            line(&mut buf, "Psi_1", pg.psi_1);
            line(&mut buf, "Psi_2", pg.psi_2);
        }
        None => writeln!(buf, "# no paradox: mu < mu_P").unwrap(),
    }
    if let Some(c) = case {
        writeln!(buf, "case     = {}", case_label(c)).unwrap();
    }
    buf
}

pub fn run(args: &CriticalArgs, cfg: &Defaults) -> AppResult<()> {
    let params = resolve_params(args.alpha, args.mu, cfg)?;
    let cs = critical_set(&params);
    let case = args.psi.map(|psi_rate| classify_case(&params, psi_rate));

    let text = if args.json {
        let mut v = critical_json(&cs);
        if let Some(c) = &case {
            v["case"] = json!(case_label(c));
        }
        format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
    } else {
        render_table(&cs, case.as_ref())
    };

    let out = OutTarget::parse(&args.out);
    let mut scope = RunScope::new(
        "critical",
        json!({ "alpha": params.alpha, "mu": params.mu, "Psi": args.psi, "json": args.json }),
    );
    let mut w = out.writer()?;
    use std::io::Write as _;
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| AppError::io(e.to_string()))?;
    drop(w);
    if let Some(path) = out.path() {
        scope.record(path);
    }
    scope.finish()
}
