//! Time evolution of the hyperdissipative Navier–Stokes system.

mod config;
mod integrator;
mod rhs;

pub use config::SolverConfig;
pub use integrator::{cfl_dt, Integrator, SolverState, Stop, TimeStep};
pub use rhs::{compute_pressure, dissipation_symbol, nonlinear_term, Dynamics, Fault};

use crate::error::Result;
use crate::spectral::{SpectralVectorField, WavenumberLattice};

impl SolverConfig {
    /// Dynamics described by this configuration.
    pub fn dynamics(&self, lattice: &WavenumberLattice) -> Dynamics {
        Dynamics::new(lattice, self.alpha, self.effective_nu())
    }

    pub fn time_step(&self) -> TimeStep {
        match self.fixed_dt {
            Some(h) => TimeStep::Fixed(h),
            None => TimeStep::Cfl { safety: self.cfl_safety, dt_max: self.dt_max },
        }
    }
}

/// Runs `u0` to `t_end` with the configured stepping and no observation.
pub fn evolve(config: &SolverConfig, u0: SpectralVectorField) -> Result<SolverState> {
    config.validate()?;
    let mut it = Integrator::new(config.dynamics(u0.lattice()));
    let mut state = SolverState::new(u0);
    it.advance(&mut state, config.t_end, config.time_step(), |_, _| Ok(true))?;
    Ok(state)
}
