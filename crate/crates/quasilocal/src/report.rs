//! JSON run reports and CSV trace files.
//!
//! A report has the top-level keys `scenario`, `stages`, `verdicts`, `errors`
//! and `tolerances`. Each verdict carries `theorem`, `scenario`, `parts`
//! (`part`, `lhs`, `rhs`, `margin`), `margin` (null when a hypothesis
//! fails), `verified`, `hypotheses` (`name`, `status`), `constants`
//! (`name`, `value`, `source`), `notes` and `optimality_residual`.

use std::fs;
use std::path::{Path, PathBuf};

use quasilocal_core::verdict::{TheoremId, VerdictRecord};
use serde_json::{json, Value};

use crate::error::{HResult, HarnessError};
use crate::pipeline::Pipeline;

pub fn verdict_json(rec: &VerdictRecord, tol: f64) -> Value {
    json!({
        "theorem": rec.theorem.label(),
        "scenario": rec.scenario,
        "parts": rec.parts.iter().map(|p| json!({"part": p.part, "lhs": p.lhs, "rhs": p.rhs, "margin": p.margin()})).collect::<Vec<_>>(),
        "margin": rec.margin(),
        "verified": rec.verified(tol),
        "hypotheses": rec.hypotheses.iter().map(|(n, s)| json!({"name": n, "status": s.label()})).collect::<Vec<_>>(),
        "constants": rec.constants.iter().map(|c| json!({"name": c.name, "value": c.value, "source": c.source})).collect::<Vec<_>>(),
        "notes": rec.notes,
        "optimality_residual": rec.optimality_residual,
    })
}

/// Summary of every stage the run actually computed.
pub fn stages_json(p: &Pipeline) -> Value {
    let mut out = serde_json::Map::new();
    if let Some(d) = p.data_if_ready() {
        out.insert(
            "data".into(),
            json!({"r_min": d.r[0], "r_max": d.r[d.r.len() - 1], "nodes": d.r.len(), "polar": d.polar.is_some()}),
        );
    }
    if let Some(h) = p.horizon_if_ready() {
        out.insert("horizon".into(), json!({"radius": h.horizon.radius, "area": h.horizon.area, "charge": h.q, "angular_momentum": h.j}));
    }
    if let Some(s) = p.sigma_if_ready() {
        out.insert(
            "surface".into(),
            json!({
                "radius": s.radius, "area": s.area, "m_by": s.m_by, "m_ly": s.m_ly, "charge": s.q,
                "j_by": s.j_by, "j_total": s.j_total, "min_gauss": s.min_gauss, "min_h": s.min_h,
                "embedding_residual": s.profile.metric_residual,
            }),
        );
    }
    if let Some(i) = p.imcf_if_ready() {
        out.insert(
            "imcf".into(),
            json!({
                "alpha2": i.alpha2, "beta": i.beta, "area_star": i.area_star, "circumference": i.circumference,
                "leaves": i.trace.len(), "t0": i.trace.t0(), "area_law_residual": i.trace.area_law_residual,
                "surrogate": i.trace.surrogate,
            }),
        );
    }
    if let Some(g) = p.glue_if_ready() {
        let c = &g.composite;
        let j = &g.jang;
        out.insert(
            "jang".into(),
            json!({
                "blowup": j.blowup, "base": j.base, "nodes": j.q.len(), "tau_outer": j.tau_outer,
                "cylinder_scale": j.ds_bar_dq.first(), "f_outer": j.f.last(), "fp_outer": j.fp.last(),
            }),
        );
        let e = &g.exterior;
        out.insert(
            "shitam".into(),
            json!({
                "r0": e.r[0], "r_max": e.r[e.r.len() - 1], "mass_raw": e.mass_raw, "mass_extrapolated": e.mass_extrapolated,
                "tail_residual": e.tail_residual, "max_increase": e.max_increase, "steps": e.steps,
            }),
        );
        out.insert(
            "conformal".into(),
            json!({
                "gamma": g.gamma, "lambda": g.lambda, "a_coef": g.a_coef, "p_value": g.p_value,
                "conformal_mass": g.conformal_mass, "exterior_mass": c.exterior_mass,
                "truncation": g.sweep.t, "gamma_by_truncation": g.sweep.gamma, "gamma_drift": g.sweep.drift,
                "end_condition": format!("{:?}", g.end),
                "h_minus": c.h_minus, "x_sigma": c.x_sigma, "h_plus": c.h_plus, "boundary_jump": c.boundary_jump,
                "area_mismatch": c.area_mismatch,
                "mollification": g.mollification.iter().map(|m| json!({
                    "delta": m.delta, "sup_abs_scalar": m.sup_abs_scalar, "band_integral": m.band_integral,
                    "spike_amplitude": m.spike_amplitude,
                })).collect::<Vec<_>>(),
            }),
        );
    }
    if let Some(w) = p.wang_yau_if_ready() {
        out.insert(
            "wang_yau".into(),
            json!({"mass": w.mass, "energy": w.energy, "coefficients": w.coefficients, "optimality_sup": w.residual.sup, "evaluations": w.evaluations}),
        );
    }
    if let Some(s) = p.static_if_ready() {
        out.insert(
            "static_reference".into(),
            json!({"m_ref": s.reference_mass, "mass": s.mass, "star_shaped": s.star_shaped, "two_convex": s.two_convex, "max_ricci_normal": s.max_ricci_normal}),
        );
    }
    if let Some(c) = p.checks_if_ready() {
        out.insert(
            "checks".into(),
            json!({
                "dec_ok": c.energy.dec_ok, "dec_em_ok": c.energy.dec_em_ok, "strict_on_horizon": c.energy.strict_on_horizon,
                "min_dec": c.energy.min_dec, "areas_increasing": c.areas_increasing, "min_h": c.min_h,
                "min_theta_plus": c.min_theta_plus, "min_theta_minus": c.min_theta_minus, "charge_drift": c.charge_drift,
                "min_field_slack": c.min_field_slack, "max_trace_k": c.max_trace_k, "max_j_eta": c.max_j_eta,
            }),
        );
    }
    Value::Object(out)
}

pub struct RunReport {
    pub json: Value,
    pub verdicts: Vec<VerdictRecord>,
    pub errors: Vec<(TheoremId, HarnessError)>,
    pub tol: f64,
}

impl RunReport {
    /// Every verdict with holding hypotheses has a margin within budget.
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().filter(|v| v.hypotheses_hold()).all(|v| v.verified(self.tol))
    }
}

pub fn run_report(p: &Pipeline) -> RunReport {
    let mut verdicts = Vec::new();
    let mut errors = Vec::new();
    for (t, r) in p.run() {
        match r {
            Ok(v) => verdicts.push(v),
            Err(e) => errors.push((t, e)),
        }
    }
    let tol = p.tol.margin;
    let json = json!({
        "scenario": serde_json::to_value(&p.cfg).expect("config serializes"),
        "stages": stages_json(p),
        "verdicts": verdicts.iter().map(|v| verdict_json(v, tol)).collect::<Vec<_>>(),
        "errors": errors.iter().map(|(t, e)| json!({"theorem": t.label(), "error": e.to_string()})).collect::<Vec<_>>(),
        "tolerances": serde_json::to_value(&p.tol).expect("tolerances serialize"),
    });
    RunReport { json, verdicts, errors, tol }
}

fn io<T>(r: std::io::Result<T>, path: &Path) -> HResult<T> {
    r.map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

pub fn write_json(dir: &Path, name: &str, v: &Value) -> HResult<PathBuf> {
    io(fs::create_dir_all(dir), dir)?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(v).expect("json serializes");
    io(fs::write(&path, text + "\n"), &path)?;
    Ok(path)
}

pub fn write_csv(dir: &Path, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> HResult<PathBuf> {
    io(fs::create_dir_all(dir), dir)?;
    let path = dir.join(name);
    let err = |e: csv::Error| HarnessError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(&path).map_err(err)?;
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v:e}"))).map_err(err)?;
    }
    w.flush().map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

/// CSV side-files for every computed trace.
pub fn write_traces(p: &Pipeline, dir: &Path) -> HResult<Vec<PathBuf>> {
    let mut out = Vec::new();
    if let Some(d) = p.data_if_ready() {
        out.push(write_csv(
            dir,
            "data.csv",
            &["r", "areal_radius", "a", "k_rr", "k_tan", "e_nu", "b_nu", "mu", "j_abs"],
            (0..d.r.len()).map(|k| vec![d.r[k], d.rt[k], d.big_a[k], d.k_rr[k], d.k_tan[k], d.e_nu[k], d.b_nu[k], d.mu[k], d.j_abs[k]]),
        )?);
    }
    if let Some(g) = p.glue_if_ready() {
        let j = &g.jang;
        out.push(write_csv(
            dir,
            "jang.csv",
            &["q", "r", "areal_radius", "f", "fp", "a_bar", "ds_bar_dq"],
            (0..j.q.len()).map(|k| vec![j.q[k], j.r[k], j.rt[k], j.f[k], j.fp[k], j.big_a_bar[k], j.ds_bar_dq[k]]),
        )?);
    }
    if let Some(i) = p.imcf_if_ready() {
        out.push(write_csv(dir, "imcf.csv", &["t", "area", "hawking_mass", "charge_integrand", "am_integrand", "jump"], i.trace.rows().into_iter().map(|r| r.to_vec()))?);
    }
    if let Some(g) = p.glue_if_ready() {
        let st = &g.exterior;
        out.push(write_csv(dir, "shitam.csv", &["r", "u", "mass"], (0..st.r.len()).map(|k| vec![st.r[k], st.u[k][0], st.m[k]]))?);
        let c = &g.composite;
        let sol = g.sweep.solutions.last().expect("sweep is nonempty");
        let start = c.len() - sol.u.len();
        out.push(write_csv(
            dir,
            "conformal.csv",
            &["q", "s_bar", "rho", "coefficient", "u"],
            (0..sol.u.len()).map(|k| vec![c.q[start + k], c.s_bar[start + k], c.rho[start + k], c.coeff[start + k], sol.u[k]]),
        )?);
        out.push(write_csv(
            dir,
            "mollification.csv",
            &["delta", "sup_abs_scalar", "band_integral", "spike_amplitude"],
            g.mollification.iter().map(|m| vec![m.delta, m.sup_abs_scalar, m.band_integral, m.spike_amplitude]),
        )?);
    }
    Ok(out)
}
