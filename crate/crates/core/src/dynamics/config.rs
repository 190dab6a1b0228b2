use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{MAX_RESOLUTION, MIN_RESOLUTION};

/// Physical and numerical parameters of one simulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Spatial dimension, 2 or 3.
    pub n: usize,
    /// Modes per axis `N`.
    pub resolution: usize,
    /// Dissipation exponent `α`. Accepts a number or a rational string like `"5/4"`.
    #[serde(deserialize_with = "crate::scaling::deserialize_exponent")]
    pub alpha: f64,
    #[serde(default = "default_nu")]
    pub nu: f64,
    pub t_end: f64,
    #[serde(default = "default_cfl")]
    pub cfl_safety: f64,
    #[serde(default = "default_dt_max")]
    pub dt_max: f64,
    /// Use this constant step instead of the CFL rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_dt: Option<f64>,
    /// Drop the dissipation term (Euler equations).
    #[serde(default)]
    pub inviscid: bool,
    /// Steps between diagnostic records.
    #[serde(default = "default_stride")]
    pub diag_stride: u64,
    /// Fourier moment orders `m` reported per component.
    #[serde(default = "default_moments")]
    pub moment_orders: Vec<u32>,
    /// Sobolev exponents `β` reported as `‖u‖_{H^β}`.
    #[serde(default = "default_sobolev")]
    pub sobolev_orders: Vec<f64>,
}

fn default_nu() -> f64 {
    1.0
}
fn default_cfl() -> f64 {
    0.5
}
fn default_dt_max() -> f64 {
    1e-2
}
fn default_stride() -> u64 {
    1
}
fn default_moments() -> Vec<u32> {
    vec![0, 1, 2]
}
fn default_sobolev() -> Vec<f64> {
    vec![1.0]
}

impl SolverConfig {
    /// Viscous 2D/3D defaults with the given shape, exponent and end time.
    pub fn new(n: usize, resolution: usize, alpha: f64, t_end: f64) -> Self {
        Self {
            n,
            resolution,
            alpha,
            nu: default_nu(),
            t_end,
            cfl_safety: default_cfl(),
            dt_max: default_dt_max(),
            fixed_dt: None,
            inviscid: false,
            diag_stride: default_stride(),
            moment_orders: default_moments(),
            sobolev_orders: default_sobolev(),
        }
    }

    /// Viscosity actually applied: zero in inviscid mode.
    pub fn effective_nu(&self) -> f64 {
        if self.inviscid {
            0.0
        } else {
            self.nu
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.n) {
            return Err(Error::config("solver.n", format!("{} is not 2 or 3", self.n)));
        }
        if self.resolution % 2 != 0 {
            return Err(Error::config(
                "solver.resolution",
                format!("{} is odd; N must be even", self.resolution),
            ));
        }
        if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&self.resolution) {
            return Err(Error::config(
                "solver.resolution",
                format!("{} outside {MIN_RESOLUTION}..={MAX_RESOLUTION}", self.resolution),
            ));
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 || (!self.inviscid && self.alpha == 0.0) {
            return Err(Error::config("solver.alpha", "must be > 0 (finite)"));
        }
        if !(self.nu.is_finite() && (self.nu > 0.0 || self.inviscid)) {
            return Err(Error::config("solver.nu", "must be > 0"));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::config("solver.t_end", "must be finite and non-negative"));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::config("solver.cfl_safety", "must lie in (0, 1]"));
        }
        if !(self.dt_max.is_finite() && self.dt_max > 0.0) {
            return Err(Error::config("solver.dt_max", "must be positive"));
        }
        if let Some(h) = self.fixed_dt {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::config("solver.fixed_dt", "must be positive"));
            }
        }
        if self.diag_stride == 0 {
            return Err(Error::config("solver.diag_stride", "must be at least 1"));
        }
        if self.sobolev_orders.iter().any(|b| !b.is_finite()) {
            return Err(Error::config("solver.sobolev_orders", "must be finite"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_names_the_field() {
        let mut c = SolverConfig::new(2, 63, 1.0, 1.0);
        match c.validate() {
            Err(Error::InvalidConfig { field, .. }) => assert_eq!(field, "solver.resolution"),
            other => panic!("{other:?}"),
        }
        c.resolution = 64;
        c.validate().unwrap();
        c.cfl_safety = 1.5;
        assert!(c.validate().is_err());
        c.cfl_safety = 0.5;
        c.alpha = 0.0;
        assert!(c.validate().is_err());
        c.inviscid = true;
        c.validate().unwrap();
        c.n = 4;
        assert!(c.validate().is_err());
    }
}
