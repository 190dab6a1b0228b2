use num_complex::Complex64;

use super::rhs::Dynamics;
use crate::error::{Error, Result};
use crate::spectral::{dealias_in_place, leray_project_in_place, SpectralVectorField};

/// Velocity plus clock.
#[derive(Clone, Debug)]
pub struct SolverState {
    pub u: SpectralVectorField,
    pub t: f64,
    pub step_count: u64,
}

impl SolverState {
    pub fn new(u: SpectralVectorField) -> Self {
        let t = u.time;
        Self { u, t, step_count: 0 }
    }
}

/// How the step size is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeStep {
    Fixed(f64),
    Cfl { safety: f64, dt_max: f64 },
}

/// `safety · Δx / max_i ‖u_i‖_∞`, capped at `dt_max`.
pub fn cfl_dt(u: &SpectralVectorField, safety: f64, dt_max: f64) -> f64 {
    let umax = u.to_physical().max_abs();
    if !(umax > 0.0) {
        return dt_max;
    }
    (safety * u.lattice().grid_spacing() / umax).min(dt_max)
}

/// What stopped a call to [`Integrator::advance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stop {
    /// Reached the requested end time.
    Reached,
    /// The observer asked to stop.
    Halted,
}

/// Integrating-factor RK4: the linear dissipation is solved exactly and the
/// advection term is stepped with classical RK4 in the transformed variable.
#[derive(Clone, Debug)]
pub struct Integrator {
    dynamics: Dynamics,
    cached_h: f64,
    full: Vec<f64>,
    half: Vec<f64>,
}

impl Integrator {
    pub fn new(dynamics: Dynamics) -> Self {
        Self { dynamics, cached_h: f64::NAN, full: Vec::new(), half: Vec::new() }
    }

    pub fn dynamics(&self) -> &Dynamics {
        &self.dynamics
    }

    fn factors(&mut self, h: f64) {
        if self.cached_h == h {
            return;
        }
        let sym = self.dynamics.symbol();
        self.full = sym.iter().map(|&s| (-s * h).exp()).collect();
        self.half = sym.iter().map(|&s| (-s * 0.5 * h).exp()).collect();
        self.cached_h = h;
    }

    /// One step of size `h`. Fails with [`Error::Diverged`] if the result is not finite.
    pub fn step(&mut self, state: &mut SolverState, h: f64) -> Result<()> {
        self.factors(h);
        let dim = state.u.dim();
        let u = &state.u;
        let (ef, eh) = (&self.full, &self.half);

        // a·E ⊙ x + b·y, per component
        let combine = |ex: &[f64], x: &SpectralVectorField, b: f64, ey: Option<&[f64]>, y: &SpectralVectorField| {
            let mut out = x.clone();
            for i in 0..dim {
                let yc = y.component(i);
                for (idx, z) in out.component_mut(i).iter_mut().enumerate() {
                    let yy = match ey {
                        Some(e) => yc[idx] * e[idx],
                        None => yc[idx],
                    };
                    *z = *z * ex[idx] + yy * b;
                }
            }
            out
        };

        let k1 = self.dynamics.nonlinear_term(u);
        // ua = E(h/2)(u + h/2 k1)
        let ua = combine(eh, u, 0.5 * h, Some(eh), &k1);
        let k2 = self.dynamics.nonlinear_term(&ua);
        drop(ua);
        let ub = combine(eh, u, 0.5 * h, None, &k2);
        let k3 = self.dynamics.nonlinear_term(&ub);
        drop(ub);
        let uc = combine(ef, u, h, Some(eh), &k3);
        let k4 = self.dynamics.nonlinear_term(&uc);
        drop(uc);

        let mut next = u.clone();
        let sixth = h / 6.0;
        for i in 0..dim {
            let (c1, c2, c3, c4) = (k1.component(i), k2.component(i), k3.component(i), k4.component(i));
            for (idx, z) in next.component_mut(i).iter_mut().enumerate() {
                let incr = c1[idx] * ef[idx] + (c2[idx] + c3[idx]) * (2.0 * eh[idx]) + c4[idx];
                *z = *z * ef[idx] + incr * sixth;
            }
        }
        leray_project_in_place(&mut next);
        if self.dynamics.dealiases() {
            dealias_in_place(&mut next);
        }
        for i in 0..dim {
            next.component_mut(i)[0] = Complex64::new(0.0, 0.0);
        }

        state.t += h;
        state.step_count += 1;
        next.time = state.t;
        if !next.is_finite() {
            state.u = next;
            return Err(Error::Diverged { t: state.t, step: state.step_count });
        }
        state.u = next;
        Ok(())
    }

    /// Steps until `t_end`, shortening the last step to land on it exactly.
    ///
    /// `observe` is called after every step with the step size used; returning
    /// `false` stops the run early.
    pub fn advance(
        &mut self,
        state: &mut SolverState,
        t_end: f64,
        policy: TimeStep,
        mut observe: impl FnMut(&SolverState, f64) -> Result<bool>,
    ) -> Result<Stop> {
        loop {
            let remaining = t_end - state.t;
            if remaining <= t_end.abs().max(1.0) * 1e-13 {
                return Ok(Stop::Reached);
            }
            let dt = match policy {
                TimeStep::Fixed(h) => h,
                TimeStep::Cfl { safety, dt_max } => cfl_dt(&state.u, safety, dt_max),
            };
            let h = if dt >= remaining { remaining } else { dt };
            self.step(state, h)?;
            if !observe(state, h)? {
                return Ok(Stop::Halted);
            }
        }
    }

    /// Exactly `steps` steps of size `h`.
    pub fn advance_fixed(&mut self, state: &mut SolverState, h: f64, steps: u64) -> Result<()> {
        for _ in 0..steps {
            self.step(state, h)?;
        }
        Ok(())
    }
}
