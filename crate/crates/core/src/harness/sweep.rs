use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use super::run::{now, simulate, write_outputs, RunStatus, Simulation};
use crate::error::{Error, Result};
use crate::scaling::{lions_exponent, rational_to_f64};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub status: RunStatus,
    pub max_enstrophy: f64,
    /// Largest `M_1(û_i)` over components and recorded times.
    pub max_m1: f64,
    pub resolution_loss_time: Option<f64>,
    pub energy_ratio: f64,
    /// This row sits at `α_L(n)`.
    pub lions: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub alpha_lions: f64,
    pub alphas: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "alpha,status,max_enstrophy,max_M1,resolution_loss_time,energy_ratio,alpha_lions_marker\n",
        );
        for r in &self.rows {
            s.push_str(&format!(
                "{:?},{},{:?},{:?},{},{:?},{}\n",
                r.alpha,
                r.status.as_str(),
                r.max_enstrophy,
                r.max_m1,
                r.resolution_loss_time.map_or(String::new(), |t| format!("{t:?}")),
                r.energy_ratio,
                if r.lions { "alpha_L" } else { "" },
            ));
        }
        s
    }
}

/// Sorted copy of `alphas`; duplicates are an error.
pub fn validate_alphas(alphas: &[f64]) -> Result<Vec<f64>> {
    if alphas.is_empty() {
        return Err(Error::config("alphas", "empty list"));
    }
    let mut sorted = alphas.to_vec();
    if sorted.iter().any(|a| !a.is_finite()) {
        return Err(Error::config("alphas", "values must be finite"));
    }
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::config("alphas", format!("duplicate value {}", w[0])));
    }
    Ok(sorted)
}

fn row_of(alpha: f64, lions: f64, sim: &Simulation) -> SweepRow {
    let max_of = |f: &dyn Fn(&crate::diagnostics::DiagnosticsRecord) -> f64| {
        sim.records.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
    };
    let max_m1 = max_of(&|r| {
        (0..r.moments.first().map_or(0, |(_, v)| v.len()))
            .filter_map(|i| r.moment(i, 1.0))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    let first = sim.records.first().expect("initial record");
    let last = sim.records.last().expect("initial record");
    SweepRow {
        alpha,
        status: sim.status,
        max_enstrophy: max_of(&|r| r.enstrophy),
        max_m1,
        resolution_loss_time: sim.records.iter().find(|r| r.flags.resolution_loss).map(|r| r.t),
        energy_ratio: last.energy / first.energy,
        lions: alpha == lions,
    }
}

fn config_for(base: &RunConfig, alpha: f64) -> RunConfig {
    let mut c = base.clone();
    c.solver.alpha = alpha;
    c
}

/// Runs `base` once per `α` in parallel, optionally persisting each run under
/// `out/alpha_<α>/` and the summary as `out/sweep.csv` and `out/sweep.json`.
pub fn sweep(base: &RunConfig, alphas: &[f64], out: Option<&Path>) -> Result<SweepSummary> {
    let alphas = validate_alphas(alphas)?;
    for &a in &alphas {
        config_for(base, a).validate()?;
    }
    let lions = rational_to_f64(lions_exponent(base.solver.n as u32));
    let rows: Vec<Result<SweepRow>> = alphas
        .par_iter()
        .map(|&a| {
            let cfg = config_for(base, a);
            let started = now();
            let sim = simulate(&cfg)?;
            if let Some(dir) = out {
                let sub: PathBuf = dir.join(format!("alpha_{a}"));
                write_outputs(&cfg, &sim, &sub, started)?;
            }
            Ok(row_of(a, lions, &sim))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let summary = SweepSummary { n: base.solver.n, alpha_lions: lions, alphas, rows };
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Error::output(dir, e))?;
        let csv_path = dir.join("sweep.csv");
        fs::write(&csv_path, summary.to_csv()).map_err(|e| Error::output(&csv_path, e))?;
        let json_path = dir.join("sweep.json");
        let text = serde_json::to_string_pretty(&summary).expect("plain data") + "\n";
        fs::write(&json_path, text).map_err(|e| Error::output(&json_path, e))?;
    }
    Ok(summary)
}
