use serde::Serialize;

use super::config::RunConfig;
use crate::dynamics::{cfl_dt, Integrator, SolverState};
use crate::error::Result;
use crate::scaling::{apply_discrete_rescale, scaled_energy_ratio, truncate_for_rescale};
use crate::spectral::build_lattice;

pub const COMMUTATION_TOLERANCE: f64 = 1e-6;
pub const ENERGY_RATIO_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleReport {
    pub q: u32,
    pub n: usize,
    pub alpha: f64,
    pub t_end: f64,
    pub steps: u64,
    /// `‖R_q S_T u − S_{T/q^{2α}} R_q u‖ / ‖R_q S_T u‖`
    pub commutation_discrepancy: f64,
    /// Energy fraction of `S_T u` outside what `R_q` can carry; dropped before rescaling.
    pub truncated_energy_fraction: f64,
    pub energy_ratio: f64,
    pub expected_energy_ratio: f64,
    pub energy_ratio_discrepancy: f64,
    pub commutation_pass: bool,
    pub energy_ratio_pass: bool,
}

impl ScaleReport {
    pub fn passed(&self) -> bool {
        self.commutation_pass && self.energy_ratio_pass
    }
}

/// Solution-map commutation with the rescaling `R_q`, plus the energy identity.
///
/// Both paths use the same number of fixed steps, the rescaled one with step
/// `h/q^{2α}`, so the time discretization commutes with `R_q` as well and the
/// remaining discrepancy measures the spatial truncation only.
pub fn scale_check(cfg: &RunConfig, q: u32) -> Result<ScaleReport> {
    cfg.validate()?;
    let s = &cfg.solver;
    let lat = build_lattice(s.n, s.resolution)?;
    let u0 = cfg.initial.build(&lat)?;
    let alpha = s.alpha;

    let h0 = s.fixed_dt.unwrap_or_else(|| cfl_dt(&u0, s.cfl_safety, s.dt_max));
    let steps = if s.t_end > 0.0 { (s.t_end / h0).ceil().max(1.0) as u64 } else { 0 };
    let h = if steps > 0 { s.t_end / steps as f64 } else { 0.0 };
    let time_factor = (q as f64).powf(2.0 * alpha);

    let rescaled0 = apply_discrete_rescale(&u0, q, alpha)?;

    let mut a = SolverState::new(u0.clone());
    Integrator::new(s.dynamics(&lat)).advance_fixed(&mut a, h, steps)?;
    let (kept, dropped) = truncate_for_rescale(&a.u, q);
    let path_a = apply_discrete_rescale(&kept, q, alpha)?;

    let mut b = SolverState::new(rescaled0);
    Integrator::new(s.dynamics(&lat)).advance_fixed(&mut b, h / time_factor, steps)?;

    let discrepancy = b.u.relative_distance(&path_a)?;
    let ratio = scaled_energy_ratio(&u0, q, alpha)?;
    let expected = (q as f64).powf(4.0 * alpha - 2.0 - s.n as f64);
    let ratio_err = ((ratio - expected) / expected).abs();
    Ok(ScaleReport {
        q,
        n: s.n,
        alpha,
        t_end: s.t_end,
        steps,
        commutation_discrepancy: discrepancy,
        truncated_energy_fraction: dropped,
        energy_ratio: ratio,
        expected_energy_ratio: expected,
        energy_ratio_discrepancy: ratio_err,
        commutation_pass: discrepancy <= COMMUTATION_TOLERANCE,
        energy_ratio_pass: ratio_err <= ENERGY_RATIO_TOLERANCE,
    })
}
