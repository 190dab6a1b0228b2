//! C ABI over the `nshd` solver.
//!
//! Every fallible function returns an [`NshdStatus`]. On failure a message is
//! kept per thread and can be read with [`nshd_last_error_message`]. Handles
//! are opaque and must be released with [`nshd_simulation_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use num_rational::Rational64;

use nshd::diagnostics::DiagnosticsPlan;
use nshd::dynamics::{cfl_dt, Integrator, SolverState, TimeStep};
use nshd::harness::{default_plan, RunConfig};
use nshd::scaling::{lions_exponent, solvability_margin, Classification};
use nshd::spectral::checkpoint::{self, CheckpointHeader};
use nshd::spectral::{build_lattice, SpectralVectorField};
use nshd::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NshdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidConfig = 3,
    ConfigParse = 4,
    Diverged = 5,
    Io = 6,
    Checkpoint = 7,
    InvalidArgument = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NshdClassification {
    Subcritical = 0,
    Critical = 1,
    Supercritical = 2,
}

/// Scalar diagnostics of the current state.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct NshdDiagnostics {
    pub t: f64,
    pub step: u64,
    pub dt: f64,
    pub energy: f64,
    pub dissipation_rate: f64,
    pub enstrophy: f64,
    pub enstrophy_production: f64,
    pub max_velocity: f64,
    pub tail_fraction: f64,
    pub diverged: bool,
    pub resolution_loss: bool,
}

/// A configured simulation and its current state.
pub struct NshdSimulation {
    config: RunConfig,
    integrator: Integrator,
    state: SolverState,
    plan: DiagnosticsPlan,
    policy: TimeStep,
    last_dt: f64,
    diverged: bool,
}

struct Failure(NshdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnsupportedDimension(_)
            | Error::InvalidResolution(_)
            | Error::InvalidConfig { .. }
            | Error::EmptyBand { .. } => NshdStatus::InvalidConfig,
            Error::ConfigParse(_) => NshdStatus::ConfigParse,
            Error::Diverged { .. } => NshdStatus::Diverged,
            Error::Io(_) | Error::Output { .. } => NshdStatus::Io,
            Error::Checkpoint(_) => NshdStatus::Checkpoint,
            _ => NshdStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: NshdStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NshdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NshdStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NshdStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(NshdStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(NshdStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn sim_ref<'a>(p: *const NshdSimulation) -> Result<&'a NshdSimulation, Failure> {
    p.as_ref().ok_or(Failure(NshdStatus::NullPointer, "simulation is null".into()))
}

unsafe fn sim_mut<'a>(p: *mut NshdSimulation) -> Result<&'a mut NshdSimulation, Failure> {
    p.as_mut().ok_or(Failure(NshdStatus::NullPointer, "simulation is null".into()))
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, need: usize) -> Result<&'a mut [f64], Failure> {
    if p.is_null() {
        return fail(NshdStatus::NullPointer, "output buffer is null");
    }
    if len < need {
        return fail(NshdStatus::InvalidArgument, format!("output buffer holds {len} values, need {need}"));
    }
    Ok(std::slice::from_raw_parts_mut(p, need))
}

impl NshdSimulation {
    fn from_config(config: RunConfig) -> Result<Self, Failure> {
        config.validate()?;
        let lattice = build_lattice(config.solver.n, config.solver.resolution)?;
        let u0 = config.initial.build(&lattice)?;
        Ok(Self {
            integrator: Integrator::new(config.solver.dynamics(&lattice)),
            state: SolverState::new(u0),
            plan: default_plan(&config),
            policy: config.solver.time_step(),
            last_dt: 0.0,
            diverged: false,
            config,
        })
    }

    fn check_alive(&self) -> Result<(), Failure> {
        if self.diverged {
            return fail(NshdStatus::Diverged, format!("solution diverged before t = {}", self.state.t));
        }
        Ok(())
    }

    fn record<T>(&mut self, r: nshd::Result<T>) -> Result<T, Failure> {
        if let Err(Error::Diverged { .. }) = &r {
            self.diverged = true;
        }
        Ok(r?)
    }

    fn field(&self) -> &SpectralVectorField {
        &self.state.u
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nshd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nshd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Builds a simulation from a TOML run configuration held in `toml`.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_new_from_toml(
    toml: *const c_char,
    out: *mut *mut NshdSimulation,
) -> NshdStatus {
    guard(|| {
        if out.is_null() {
            return fail(NshdStatus::NullPointer, "out is null");
        }
        *out = std::ptr::null_mut();
        let cfg = RunConfig::from_toml(str_arg(toml, "toml")?)?;
        *out = Box::into_raw(Box::new(NshdSimulation::from_config(cfg)?));
        Ok(())
    })
}

/// Builds a simulation from a TOML file at `path`.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_new_from_file(
    path: *const c_char,
    out: *mut *mut NshdSimulation,
) -> NshdStatus {
    guard(|| {
        if out.is_null() {
            return fail(NshdStatus::NullPointer, "out is null");
        }
        *out = std::ptr::null_mut();
        let cfg = RunConfig::load(Path::new(str_arg(path, "path")?))?;
        *out = Box::into_raw(Box::new(NshdSimulation::from_config(cfg)?));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_free(sim: *mut NshdSimulation) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Takes one step with the configured step policy (fixed or CFL).
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_step(sim: *mut NshdSimulation) -> NshdStatus {
    guard(|| {
        let s = sim_mut(sim)?;
        s.check_alive()?;
        let h = match s.policy {
            TimeStep::Fixed(h) => h,
            TimeStep::Cfl { safety, dt_max } => cfl_dt(&s.state.u, safety, dt_max),
        };
        let r = s.integrator.step(&mut s.state, h);
        s.record(r)?;
        s.last_dt = h;
        Ok(())
    })
}

/// Takes `steps` steps of exactly `h`.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_step_fixed(sim: *mut NshdSimulation, h: f64, steps: u64) -> NshdStatus {
    guard(|| {
        let s = sim_mut(sim)?;
        s.check_alive()?;
        if !(h > 0.0 && h.is_finite()) {
            return fail(NshdStatus::InvalidArgument, format!("step size {h} must be positive"));
        }
        let r = s.integrator.advance_fixed(&mut s.state, h, steps);
        s.record(r)?;
        if steps > 0 {
            s.last_dt = h;
        }
        Ok(())
    })
}

/// Advances to `t_end`, shortening the last step to land on it exactly.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_advance(sim: *mut NshdSimulation, t_end: f64) -> NshdStatus {
    guard(|| {
        let s = sim_mut(sim)?;
        s.check_alive()?;
        if !(t_end.is_finite() && t_end >= s.state.t) {
            return fail(NshdStatus::InvalidArgument, format!("t_end = {t_end} is before t = {}", s.state.t));
        }
        let mut last = s.last_dt;
        let r = s.integrator.advance(&mut s.state, t_end, s.policy, |_, h| {
            last = h;
            Ok(true)
        });
        s.last_dt = last;
        s.record(r)?;
        Ok(())
    })
}

/// Current simulation time, or NaN for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_time(sim: *const NshdSimulation) -> f64 {
    sim.as_ref().map_or(f64::NAN, |s| s.state.t)
}

/// Steps taken so far, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_step_count(sim: *const NshdSimulation) -> u64 {
    sim.as_ref().map_or(0, |s| s.state.step_count)
}

/// Kinetic energy of the current state, or NaN for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_energy(sim: *const NshdSimulation) -> f64 {
    sim.as_ref().map_or(f64::NAN, |s| nshd::diagnostics::energy(s.field()))
}

#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_diagnostics(
    sim: *const NshdSimulation,
    out: *mut NshdDiagnostics,
) -> NshdStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let out = out.as_mut().ok_or(Failure(NshdStatus::NullPointer, "out is null".into()))?;
        let r = s.plan.record(s.field(), s.state.step_count, s.last_dt);
        *out = NshdDiagnostics {
            t: r.t,
            step: r.step,
            dt: r.dt,
            energy: r.energy,
            dissipation_rate: r.dissipation_rate,
            enstrophy: r.enstrophy,
            enstrophy_production: r.enstrophy_production,
            max_velocity: r.max_velocity,
            tail_fraction: r.tail_fraction,
            diverged: r.flags.diverged,
            resolution_loss: r.flags.resolution_loss,
        };
        Ok(())
    })
}

/// Spatial dimension (2 or 3), or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_dimension(sim: *const NshdSimulation) -> usize {
    sim.as_ref().map_or(0, |s| s.field().dim())
}

/// Grid points per side, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_resolution(sim: *const NshdSimulation) -> usize {
    sim.as_ref().map_or(0, |s| s.field().lattice().resolution())
}

/// Number of Fourier modes per component (resolution^dimension).
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_mode_count(sim: *const NshdSimulation) -> usize {
    sim.as_ref().map_or(0, |s| s.field().lattice().total_modes())
}

/// Copies component `i` of the spectrum into `out` as interleaved
/// (re, im) pairs in FFT order. `len` must be at least twice the mode count.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_coefficients(
    sim: *const NshdSimulation,
    component: usize,
    out: *mut f64,
    len: usize,
) -> NshdStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let u = s.field();
        if component >= u.dim() {
            return fail(NshdStatus::InvalidArgument, format!("component {component} out of range"));
        }
        let coeffs = u.component(component);
        let dst = out_slice(out, len, 2 * coeffs.len())?;
        for (pair, z) in dst.chunks_exact_mut(2).zip(coeffs) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// Copies component `i` of the velocity on the grid, row-major.
/// `len` must be at least the mode count.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_velocity(
    sim: *const NshdSimulation,
    component: usize,
    out: *mut f64,
    len: usize,
) -> NshdStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let u = s.field();
        if component >= u.dim() {
            return fail(NshdStatus::InvalidArgument, format!("component {component} out of range"));
        }
        let phys = u.to_physical();
        let values = phys.component(component);
        out_slice(out, len, values.len())?.copy_from_slice(values);
        Ok(())
    })
}

/// Writes the current state as a binary checkpoint.
#[no_mangle]
pub unsafe extern "C" fn nshd_simulation_write_checkpoint(
    sim: *const NshdSimulation,
    path: *const c_char,
) -> NshdStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let path = str_arg(path, "path")?;
        let header = CheckpointHeader {
            alpha: s.config.solver.alpha,
            nu: s.config.solver.effective_nu(),
            seed: s.config.initial.seed,
        };
        checkpoint::save(Path::new(path), s.field(), &header)?;
        Ok(())
    })
}

/// Critical exponent α_L(n) = (n + 2)/4 as a reduced fraction.
#[no_mangle]
pub unsafe extern "C" fn nshd_lions_exponent(n: u32, num: *mut i64, den: *mut i64) -> NshdStatus {
    guard(|| {
        if n < 2 {
            return fail(NshdStatus::InvalidArgument, "n must be at least 2");
        }
        if num.is_null() || den.is_null() {
            return fail(NshdStatus::NullPointer, "output pointer is null");
        }
        let r = lions_exponent(n);
        *num = *r.numer();
        *den = *r.denom();
        Ok(())
    })
}

/// Margin 2α − 1 − n/2 for α = alpha_num/alpha_den, exactly, with its class.
#[no_mangle]
pub unsafe extern "C" fn nshd_solvability_margin(
    n: u32,
    alpha_num: i64,
    alpha_den: i64,
    margin_num: *mut i64,
    margin_den: *mut i64,
    classification: *mut NshdClassification,
) -> NshdStatus {
    guard(|| {
        if n < 2 {
            return fail(NshdStatus::InvalidArgument, "n must be at least 2");
        }
        if alpha_den == 0 {
            return fail(NshdStatus::InvalidArgument, "zero denominator");
        }
        if margin_num.is_null() || margin_den.is_null() || classification.is_null() {
            return fail(NshdStatus::NullPointer, "output pointer is null");
        }
        let m = solvability_margin(n, Rational64::new(alpha_num, alpha_den));
        *margin_num = *m.value.numer();
        *margin_den = *m.value.denom();
        *classification = match m.classification {
            Classification::Subcritical => NshdClassification::Subcritical,
            Classification::Critical => NshdClassification::Critical,
            Classification::Supercritical => NshdClassification::Supercritical,
        };
        Ok(())
    })
}

