use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quasilocal::config::ScenarioConfig;
use quasilocal::error::{HResult, HarnessError};
use quasilocal::pipeline::Pipeline;
use quasilocal::report::{run_report, stages_json, write_json, write_traces};
use quasilocal::sweep::{run_sweep, sweep_json};
use quasilocal_core::verdict::TheoremId;
use serde_json::json;

#[derive(Parser)]
#[command(name = "quasilocal", version, about = "Quasi-local mass inequalities on exact black hole data")]
struct Cli {
    /// Scenario file (TOML); defaults to Schwarzschild m = 1 on [r_h, 8].
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for the JSON report and CSV traces.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Multiplies every tolerance in the config.
    #[arg(long, global = true, default_value_t = 1.0)]
    tol_scale: f64,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Clone)]
enum Cmd {
    /// Radial initial data and the energy-condition audit.
    BuildData,
    /// Geometry of the outer surface and the horizon.
    Surface,
    /// Isometric embeddings of the outer surface.
    Embed,
    /// Radial Jang solution with blow-up at the horizon.
    Jang,
    /// Shi-Tam exterior flow from the Jang boundary.
    Shitam,
    /// Inverse mean curvature flow from the inner boundary.
    Imcf,
    /// Conformal solve on the glued manifold.
    Conformal,
    /// Corner matching and mollification audit of the glued manifold.
    GlueAudit,
    /// Brown-York, Liu-Yau, Wang-Yau and static masses of the outer surface.
    Mass,
    /// Verdicts for the configured theorems (all when none are listed).
    Verify {
        #[arg(long = "theorem")]
        theorems: Vec<String>,
    },
    /// Cartesian sweep over the `[sweep]` ranges of the config.
    Sweep,
    /// Bekenstein-like bounds with the Brown-York mass as energy.
    Bekenstein,
}

fn load(cli: &Cli) -> HResult<ScenarioConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if !(cli.tol_scale > 0.0) {
        return Err(HarnessError::Config("--tol-scale must be positive".into()));
    }
    Ok(cfg)
}

fn out_dir(cli: &Cli, cfg: &ScenarioConfig) -> Option<PathBuf> {
    cli.out.clone().or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
}

fn emit(cli: &Cli, cfg: &ScenarioConfig, p: Option<&Pipeline>, doc: serde_json::Value) -> HResult<()> {
    println!("{}", serde_json::to_string_pretty(&doc).expect("json serializes"));
    if let Some(dir) = out_dir(cli, cfg) {
        write_json(&dir, "report.json", &doc)?;
        if let Some(p) = p {
            write_traces(p, &dir)?;
        }
    }
    Ok(())
}

fn stage_doc(p: &Pipeline) -> serde_json::Value {
    json!({
        "scenario": serde_json::to_value(&p.cfg).expect("config serializes"),
        "stages": stages_json(p),
        "tolerances": serde_json::to_value(&p.tol).expect("tolerances serialize"),
    })
}

fn run(cli: &Cli) -> HResult<bool> {
    let mut cfg = load(cli)?;
    if cli.threads > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let cmd = cli.cmd.clone();
    match cmd {
        Cmd::Sweep => {
            let points = run_sweep(&cfg, &cfg.sweep, cli.tol_scale);
            let tol = cfg.tolerances.scaled(cli.tol_scale).margin;
            let ok = points.iter().all(|pt| {
                pt.verdicts.iter().all(|(_, r)| r.as_ref().map_or(true, |v| !v.hypotheses_hold() || v.verified(tol)))
            });
            emit(cli, &cfg, None, json!({"sweep": sweep_json(&points, tol)}))?;
            return Ok(ok);
        }
        Cmd::Verify { theorems } if !theorems.is_empty() => cfg.theorems = theorems,
        Cmd::Verify { .. } if cfg.theorems.is_empty() => {
            cfg.theorems = TheoremId::ALL.iter().map(|t| t.label().to_string()).collect();
        }
        Cmd::Bekenstein => cfg.theorems = vec![TheoremId::Bekenstein.label().into()],
        _ => {}
    }
    let p = Pipeline::new(cfg.clone())?.with_tolerance_scale(cli.tol_scale);
    match cli.cmd {
        Cmd::Verify { .. } | Cmd::Bekenstein => {
            let rep = run_report(&p);
            emit(cli, &cfg, Some(&p), rep.json.clone())?;
            for (t, e) in &rep.errors {
                eprintln!("{}: {e}", t.label());
            }
            return Ok(rep.all_hold());
        }
        Cmd::BuildData => {
            p.data()?;
            p.checks()?;
        }
        Cmd::Surface => {
            p.sigma()?;
            p.horizon()?;
        }
        Cmd::Embed => {
            p.sigma()?;
            p.static_reference()?;
        }
        Cmd::Jang | Cmd::Shitam | Cmd::Conformal | Cmd::GlueAudit => {
            p.glue()?;
        }
        Cmd::Imcf => {
            p.imcf()?;
        }
        Cmd::Mass => {
            p.sigma()?;
            p.wang_yau()?;
            p.static_reference()?;
        }
        Cmd::Sweep => unreachable!(),
    }
    emit(cli, &cfg, Some(&p), stage_doc(&p))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
