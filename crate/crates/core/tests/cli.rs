//! Runs the `nshd` binary end to end.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use nshd::spectral::checkpoint;

const TG: &str = r#"
schema_version = 1
[solver]
n = 2
resolution = 32
alpha = "5/4"
t_end = 0.5
moment_orders = [0, 2]
[initial]
kind = "taylor_green"
"#;

fn nshd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nshd")).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn run_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "tg.toml", TG);
    let out = dir.path().join("out");
    let res = nshd(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));

    let csv = fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(header.contains(&"M0_c1") && header.contains(&"M2_c2") && !header.contains(&"M1_c1"));
    let last: Vec<&str> = csv.lines().last().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    assert_eq!(last[col("t")], "0.5");
    let e: f64 = last[col("energy")].parse().unwrap();
    let expect = std::f64::consts::PI.powi(2) * (-2.0 * 2f64.powf(1.25) * 0.5).exp();
    assert!((e - expect).abs() < 1e-10 * expect);
    assert_eq!(last[col("flags")], "none");

    let (field, header) = checkpoint::load(&out.join("final.chk")).unwrap();
    assert_eq!(field.time, 0.5);
    assert_eq!(header.alpha, 1.25);

    let run: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("run.json")).unwrap()).unwrap();
    assert_eq!(run["status"], "completed");
    assert_eq!(run["summary"]["t"], 0.5);
}

#[test]
fn output_dir_may_come_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("from_config");
    let text = format!("{TG}[output]\ndir = {:?}\ncheckpoint = false\n", out.to_str().unwrap());
    let cfg = write_config(dir.path(), "c.toml", &text);
    assert_eq!(nshd(&["run", "--config", &cfg]).status.code(), Some(0));
    assert!(out.join("diagnostics.csv").exists());
    assert!(!out.join("final.chk").exists());
}

#[test]
fn failures_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let odd = write_config(dir.path(), "odd.toml", &TG.replace("resolution = 32", "resolution = 33"));
    let res = nshd(&["run", "--config", &odd, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("solver.resolution"));

    let good = write_config(dir.path(), "tg.toml", TG);
    let res = nshd(&["run", "--config", &good, "--out", "/proc/nshd-cannot-write"]);
    assert_eq!(res.status.code(), Some(4));

    let blowup = r#"
schema_version = 1
[solver]
n = 2
resolution = 16
alpha = 1.0
inviscid = true
t_end = 10.0
fixed_dt = 0.5
[initial]
kind = "random_band"
amplitude = 1000.0
seed = 1
band = [1, 5]
"#;
    let cfg = write_config(dir.path(), "blowup.toml", blowup);
    let out = dir.path().join("blowup");
    let res = nshd(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let csv = fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert!(csv.lines().last().unwrap().contains("diverged"));
}

#[test]
fn exponents_are_exact() {
    let v = json(&nshd(&["exponents", "--n", "3"]));
    assert_eq!(v["alpha_lions"], "5/4");
    let v = json(&nshd(&["exponents", "--n", "3", "--alpha", "5/4"]));
    assert_eq!(v["margin"], "0");
    assert_eq!(v["classification"], "critical");
    let v = json(&nshd(&["exponents", "--n", "2", "--alpha", "0.75"]));
    assert_eq!(v["classification"], "supercritical");
    assert_eq!(nshd(&["exponents", "--n", "3", "--alpha", "x/2"]).status.code(), Some(1));
}

#[test]
fn verify_passes_and_catches_faults() {
    let ok = nshd(&["verify"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["passed"], true);

    let broken = nshd(&["verify", "--fault", "flip-dissipation"]);
    assert_eq!(broken.status.code(), Some(5));
    let v = json(&broken);
    let failed: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"energy_monotonicity"), "{failed:?}");
}

#[test]
fn scale_check_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
schema_version = 1
[solver]
n = 2
resolution = 32
alpha = 1.0
t_end = 0.05
fixed_dt = 0.005
[initial]
kind = "random_band"
seed = 3
band = [1, 2]
"#;
    let cfg = write_config(dir.path(), "s.toml", text);
    let res = nshd(&["scale-check", "--config", &cfg, "--q", "2"]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stdout));
    let v = json(&res);
    assert!(v["commutation_discrepancy"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["expected_energy_ratio"], 1.0);
}

#[test]
fn sweep_marks_the_critical_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "tg.toml", &TG.replace("resolution = 32", "resolution = 16"));
    let out = dir.path().join("sweep");
    let res = nshd(&["sweep", "--config", &cfg, "--alphas", "5/4,1,0.75", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let stdout = String::from_utf8(res.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("0.75,completed"));
    assert!(rows[1].starts_with("1.0,") && rows[1].ends_with(",alpha_L"));
    assert_eq!(fs::read_to_string(out.join("sweep.csv")).unwrap(), stdout);
    assert!(out.join("sweep.json").exists());
    assert!(fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().is_dir()).count() == 3);
}
