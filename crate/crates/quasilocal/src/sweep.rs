//! Cartesian parameter sweeps, one pipeline per point, run in parallel.

use quasilocal_core::verdict::TheoremId;
use rayon::prelude::*;

use crate::config::{ScenarioConfig, SweepRanges};
use crate::error::HarnessError;
use crate::pipeline::Pipeline;
use crate::report::verdict_json;

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub index: usize,
    pub config: ScenarioConfig,
    pub verdicts: Vec<(TheoremId, Result<quasilocal_core::verdict::VerdictRecord, HarnessError>)>,
}

fn axis<T: Copy>(v: &[T], base: T) -> Vec<T> {
    if v.is_empty() {
        vec![base]
    } else {
        v.to_vec()
    }
}

/// All configurations of the sweep, in a fixed order.
pub fn expand(base: &ScenarioConfig, r: &SweepRanges) -> Vec<ScenarioConfig> {
    let mut out = Vec::new();
    if [r.m.len(), r.a.len(), r.q.len(), r.r_out.len(), r.polar_order.len(), r.radial_nodes.len()].iter().all(|&n| n == 0) {
        return out;
    }
    for &m in &axis(&r.m, base.spacetime.m) {
        for &a in &axis(&r.a, base.spacetime.a) {
            for &q in &axis(&r.q, base.spacetime.q) {
                for &ro in &axis(&r.r_out, base.region.r_out) {
                    for &po in &axis(&r.polar_order, base.surface.polar_order) {
                        for &rn in &axis(&r.radial_nodes, base.region.radial_nodes) {
                            let mut c = base.clone();
                            c.spacetime.m = m;
                            c.spacetime.a = a;
                            c.spacetime.q = q;
                            c.region.r_out = ro;
                            c.surface.polar_order = po;
                            c.region.radial_nodes = rn;
                            c.name = format!("{}[{}]", base.name, out.len());
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Run every point; failures stay with their point.
pub fn run_sweep(base: &ScenarioConfig, ranges: &SweepRanges, tol_scale: f64) -> Vec<SweepPoint> {
    let configs = expand(base, ranges);
    let mut points: Vec<SweepPoint> = configs
        .into_par_iter()
        .enumerate()
        .map(|(index, config)| {
            let verdicts = match Pipeline::new(config.clone()) {
                Ok(p) => p.with_tolerance_scale(tol_scale).run(),
                Err(e) => config.theorem_ids().into_iter().map(|t| (t, Err(e.clone()))).collect(),
            };
            SweepPoint { index, config, verdicts }
        })
        .collect();
    points.sort_by_key(|p| p.index);
    points
}

pub fn sweep_json(points: &[SweepPoint], tol: f64) -> serde_json::Value {
    serde_json::Value::Array(
        points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "index": p.index,
                    "scenario": serde_json::to_value(&p.config).expect("config serializes"),
                    "verdicts": p.verdicts.iter().map(|(t, r)| match r {
                        Ok(v) => verdict_json(v, tol),
                        Err(e) => serde_json::json!({"theorem": t.label(), "error": e.to_string()}),
                    }).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
