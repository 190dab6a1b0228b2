use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::config::RunConfig;
use crate::diagnostics::{csv, DiagnosticsPlan, DiagnosticsRecord};
use crate::dynamics::{Dynamics, Integrator, SolverState, TimeStep};
use crate::error::{Error, Result};
use crate::spectral::checkpoint::{self, CheckpointHeader};
use crate::spectral::{build_lattice, SpectralVectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    Diverged,
    ResolutionLoss,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Completed => "completed",
            RunStatus::Diverged => "diverged",
            RunStatus::ResolutionLoss => "resolution_loss",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Completed => 0,
            RunStatus::Diverged => 2,
            RunStatus::ResolutionLoss => 3,
        }
    }

    fn from_record(rec: &DiagnosticsRecord) -> Self {
        if rec.flags.diverged {
            RunStatus::Diverged
        } else if rec.flags.resolution_loss {
            RunStatus::ResolutionLoss
        } else {
            RunStatus::Completed
        }
    }
}

/// In-memory result of a run.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub plan: DiagnosticsPlan,
    pub records: Vec<DiagnosticsRecord>,
    pub state: SolverState,
    pub status: RunStatus,
}

/// Default diagnostics for a config: its moment and Sobolev orders, plus `M_1`
/// which sweeps summarize.
pub fn default_plan(cfg: &RunConfig) -> DiagnosticsPlan {
    let s = &cfg.solver;
    let mut plan = DiagnosticsPlan::new(s.alpha, s.effective_nu(), &s.moment_orders, &s.sobolev_orders);
    if !plan.moment_orders.contains(&1.0) {
        plan.moment_orders.push(1.0);
    }
    plan
}

/// Evolves `u0` under `dynamics`, recording every `stride` steps, at the end,
/// and at divergence. Never fails on divergence; that becomes the status.
pub fn simulate_field(
    dynamics: Dynamics,
    u0: SpectralVectorField,
    t_end: f64,
    policy: TimeStep,
    stride: u64,
    plan: DiagnosticsPlan,
) -> Simulation {
    let mut integrator = Integrator::new(dynamics);
    let mut state = SolverState::new(u0);
    let mut records = vec![plan.record(&state.u, 0, 0.0)];
    let mut last_dt = 0.0;
    let outcome = integrator.advance(&mut state, t_end, policy, |s, dt| {
        last_dt = dt;
        if s.step_count % stride == 0 {
            records.push(plan.record(&s.u, s.step_count, dt));
        }
        Ok(true)
    });
    let recorded_last = records.last().map(|r| r.step) == Some(state.step_count);
    match outcome {
        Ok(_) => {
            if !recorded_last {
                records.push(plan.record(&state.u, state.step_count, last_dt));
            }
        }
        Err(Error::Diverged { .. }) => {
            let mut rec = plan.record(&state.u, state.step_count, last_dt);
            rec.flags.diverged = true;
            records.push(rec);
        }
        Err(e) => unreachable!("observer never fails: {e}"),
    }
    let status = RunStatus::from_record(records.last().expect("initial record"));
    Simulation { plan, records, state, status }
}

/// Builds the initial field and runs the configuration in memory.
pub fn simulate(cfg: &RunConfig) -> Result<Simulation> {
    simulate_with_plan(cfg, default_plan(cfg))
}

pub fn simulate_with_plan(cfg: &RunConfig, plan: DiagnosticsPlan) -> Result<Simulation> {
    cfg.validate()?;
    let s = &cfg.solver;
    let lat = build_lattice(s.n, s.resolution)?;
    let u0 = cfg.initial.build(&lat)?;
    Ok(simulate_field(s.dynamics(&lat), u0, s.t_end, s.time_step(), s.diag_stride, plan))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FinalSummary {
    pub t: f64,
    pub steps: u64,
    pub energy: f64,
    pub initial_energy: f64,
    pub enstrophy: f64,
    pub tail_fraction: f64,
}

/// What a finished run leaves on disk, also written as `run.json`.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub config: RunConfig,
    /// Seconds since the Unix epoch.
    pub started: f64,
    pub finished: f64,
    pub summary: FinalSummary,
    pub diagnostics_csv: PathBuf,
    pub checkpoint: Option<PathBuf>,
    pub status: RunStatus,
}

pub(crate) fn now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

/// Writes `diagnostics.csv`, `final.chk` and `run.json` into `out`.
pub fn write_outputs(cfg: &RunConfig, sim: &Simulation, out: &Path, started: f64) -> Result<RunRecord> {
    fs::create_dir_all(out).map_err(|e| Error::output(out, e))?;
    let dim = cfg.solver.n;

    let csv_path = out.join("diagnostics.csv");
    let f = File::create(&csv_path).map_err(|e| Error::output(&csv_path, e))?;
    csv::write_csv(BufWriter::new(f), &sim.plan, dim, &sim.records).map_err(|e| Error::output(&csv_path, e))?;

    let checkpoint = if cfg.output.checkpoint {
        let path = out.join("final.chk");
        let header = CheckpointHeader { alpha: cfg.solver.alpha, nu: cfg.solver.effective_nu(), seed: cfg.initial.seed };
        checkpoint::save(&path, &sim.state.u, &header).map_err(|e| match e {
            Error::Io(io) => Error::output(&path, io),
            other => other,
        })?;
        Some(path)
    } else {
        None
    };

    let first = sim.records.first().expect("initial record");
    let last = sim.records.last().expect("initial record");
    let record = RunRecord {
        config: cfg.clone(),
        started,
        finished: now(),
        summary: FinalSummary {
            t: sim.state.t,
            steps: sim.state.step_count,
            energy: last.energy,
            initial_energy: first.energy,
            enstrophy: last.enstrophy,
            tail_fraction: last.tail_fraction,
        },
        diagnostics_csv: csv_path,
        checkpoint,
        status: sim.status,
    };
    let json_path = out.join("run.json");
    let text = serde_json::to_string_pretty(&record).expect("plain data");
    fs::write(&json_path, text + "\n").map_err(|e| Error::output(&json_path, e))?;
    Ok(record)
}

/// Loads, runs and persists one configuration.
pub fn run_experiment(config_path: &Path, out: &Path) -> Result<RunRecord> {
    let cfg = RunConfig::load(config_path)?;
    run_config(&cfg, out)
}

pub fn run_config(cfg: &RunConfig, out: &Path) -> Result<RunRecord> {
    let started = now();
    // Fail on an unwritable directory before spending time on the run.
    fs::create_dir_all(out).map_err(|e| Error::output(out, e))?;
    let sim = simulate(cfg)?;
    write_outputs(cfg, &sim, out, started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Fault, SolverConfig};
    use crate::initial::InitialConditionSpec;
    use std::f64::consts::PI;

    fn tg(t_end: f64) -> RunConfig {
        RunConfig::new(SolverConfig::new(2, 16, 1.0, t_end), InitialConditionSpec::taylor_green(1.0))
    }

    #[test]
    fn zero_length_run_has_one_record() {
        let sim = simulate(&tg(0.0)).unwrap();
        assert_eq!(sim.records.len(), 1);
        assert_eq!(sim.status, RunStatus::Completed);
    }

    #[test]
    fn stride_and_final_record() {
        let mut cfg = tg(0.1);
        cfg.solver.fixed_dt = Some(0.01);
        cfg.solver.diag_stride = 3;
        let sim = simulate(&cfg).unwrap();
        let steps: Vec<u64> = sim.records.iter().map(|r| r.step).collect();
        assert_eq!(steps, vec![0, 3, 6, 9, 10]);
        let e = sim.records.last().unwrap().energy;
        assert!((e - PI * PI * (-0.4f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn divergence_becomes_a_status() {
        let cfg = RunConfig::new(SolverConfig::new(2, 16, 2.0, 1e3), InitialConditionSpec::random_band(1.0, 1, 1, 4));
        let lat = build_lattice(2, 16).unwrap();
        let u0 = cfg.initial.build(&lat).unwrap();
        let dynamics = cfg.solver.dynamics(&lat).with_fault(Fault::FlipDissipationSign);
        let sim = simulate_field(dynamics, u0, 1e3, TimeStep::Fixed(0.5), 1, default_plan(&cfg));
        assert_eq!(sim.status, RunStatus::Diverged);
        assert!(sim.records.last().unwrap().flags.diverged);
        assert_eq!(sim.status.exit_code(), 2);
    }
}
