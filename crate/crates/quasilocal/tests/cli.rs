use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasilocal"))
}

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

#[test]
fn verify_writes_report_and_exits_zero() {
    let out = std::env::temp_dir().join(format!("quasilocal-cli-{}", std::process::id()));
    let st = bin()
        .args(["--config"])
        .arg(scenario("schwarzschild.toml"))
        .arg("--out")
        .arg(&out)
        .args(["--seed", "7", "verify"])
        .output()
        .unwrap();
    assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(doc["scenario"]["seed"], 7);
    assert!(doc["verdicts"].as_array().unwrap().len() >= 8);
    assert!(out.join("report.json").exists() && out.join("imcf.csv").exists());
    std::fs::remove_dir_all(&out).unwrap();
}

#[test]
fn stage_verbs_print_their_stage() {
    for (verb, key) in [("build-data", "data"), ("surface", "surface"), ("imcf", "imcf"), ("glue-audit", "conformal"), ("mass", "wang_yau")] {
        let st = bin().arg("--config").arg(scenario("rn-0.6.toml")).arg(verb).output().unwrap();
        assert!(st.status.success(), "{verb}: {}", String::from_utf8_lossy(&st.stderr));
        let doc: serde_json::Value = serde_json::from_slice(&st.stdout).unwrap();
        assert!(doc["stages"].get(key).is_some(), "{verb}");
    }
}

#[test]
fn errors_exit_two() {
    let st = bin().arg("--config").arg(scenario("kerr.toml")).arg("jang").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("stage jang"));
    let st = bin().args(["--config", "/nonexistent.toml", "verify"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}

#[test]
fn sweep_runs_every_point() {
    let st = bin().arg("--config").arg(scenario("rn-sweep.toml")).args(["--threads", "2", "sweep"]).output().unwrap();
    assert!(st.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(doc["sweep"].as_array().unwrap().len(), 9);
}
