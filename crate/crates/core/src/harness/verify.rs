//! Self-contained property suite behind `nshd verify`.
//!
//! Every property builds its own small problem, so the suite runs in seconds
//! and can be pointed at a deliberately broken solver via [`Fault`].

use serde::Serialize;

use crate::diagnostics::{
    max_norm_bound_check, prop1_series, prop1_terms, DiagnosticsPlan, DiagnosticsRecord,
};
use crate::dynamics::{Dynamics, Fault, Integrator, SolverState, TimeStep};
use crate::error::Result;
use crate::harness::run::simulate_field;
use crate::initial::{random_band_limited, taylor_green, InitialConditionSpec};
use crate::scaling::{
    gaussian_moment, gaussian_moment_quadrature, interpolation_ratio, lions_exponent, scaled_energy_ratio,
    solvability_margin,
};
use crate::spectral::{leray_project, PhysicalVectorField, SpectralVectorField, WavenumberLattice};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    /// The worst observed error (or margin) for this property.
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub fault: String,
    pub results: Vec<PropertyResult>,
}

type Check = fn(Fault) -> Result<PropertyResult>;

/// Names in the order they run.
pub const PROPERTIES: &[(&str, Check)] = &[
    ("parseval", parseval),
    ("round_trip", round_trip),
    ("projection_idempotence", projection_idempotence),
    ("exact_decay", exact_decay),
    ("energy_monotonicity", energy_monotonicity),
    ("energy_balance", energy_balance),
    ("interpolation_ratio", interpolation_invariance),
    ("gaussian_oracle", gaussian_oracle),
    ("max_norm_bound", max_norm_bound),
    ("moment_inequality_taylor_green", moment_inequality_taylor_green),
    ("scaling_identities", scaling_identities),
];

fn result(name: &'static str, value: f64, tolerance: f64, detail: String) -> PropertyResult {
    PropertyResult { name, passed: value <= tolerance, value, tolerance, detail }
}

fn random(dim: usize, n: usize, seed: u64, band: [u32; 2]) -> Result<SpectralVectorField> {
    let lat = WavenumberLattice::new(dim, n)?;
    random_band_limited(&lat, &InitialConditionSpec::random_band(1.0, seed, band[0], band[1]))
}

fn parseval(_: Fault) -> Result<PropertyResult> {
    let mut worst: f64 = 0.0;
    for (dim, n) in [(2, 32), (3, 16)] {
        let u = random(dim, n, 11, [1, 4])?;
        let grid = u.to_physical().l2_norm_squared();
        let spectral = u.lattice().volume() * u.squared_norm();
        worst = worst.max(((grid - spectral) / spectral).abs());
    }
    Ok(result("parseval", worst, 1e-10, "grid quadrature vs (2π)^n Σ|û|², 2D and 3D".into()))
}

fn round_trip(_: Fault) -> Result<PropertyResult> {
    let u = random(3, 16, 5, [1, 5])?;
    let back = u.to_physical().to_spectral();
    let err = back.relative_distance(&u)?;
    Ok(result("round_trip", err, 1e-12, "spectral → physical → spectral".into()))
}

fn projection_idempotence(_: Fault) -> Result<PropertyResult> {
    let lat = WavenumberLattice::new(3, 16)?;
    let u = PhysicalVectorField::from_fn(&lat, |x| {
        [(x[0] + 2.0 * x[2]).sin(), (x[1] - x[0]).cos() * x[2].sin(), (3.0 * x[1]).cos()]
    })
    .to_spectral();
    let p = leray_project(&u);
    let pp = leray_project(&p);
    let err = pp.relative_distance(&p)?;
    let div = p.max_divergence() / p.max_amplitude();
    let value = if div <= 1e-12 { err } else { f64::INFINITY };
    Ok(result("projection_idempotence", value, 1e-15, format!("‖PPu−Pu‖/‖Pu‖ = {err:e}, divergence {div:e}")))
}

fn exact_decay(fault: Fault) -> Result<PropertyResult> {
    let lat = WavenumberLattice::new(2, 32)?;
    let alpha = 1.25;
    let u0 = taylor_green(&lat, 1.0);
    let plan = DiagnosticsPlan::new(alpha, 1.0, &[], &[]);
    // Fixed steps: the decay is exact at any step size, and under a flipped
    // dissipation sign CFL steps shrink forever instead of overflowing.
    let sim = simulate_field(
        Dynamics::new(&lat, alpha, 1.0).with_fault(fault),
        u0,
        0.5,
        TimeStep::Fixed(0.01),
        1000,
        plan,
    );
    let expect = taylor_green(&lat, (-(2f64.powf(alpha)) * 0.5).exp());
    let err = sim.state.u.relative_distance(&expect)?;
    Ok(result("exact_decay", nan_is_fail(err), 1e-8, "2D TG at t = 0.5, α = 1.25".into()))
}

fn nan_is_fail(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

fn viscous_run(fault: Fault, h: f64, steps: u64) -> Result<Vec<DiagnosticsRecord>> {
    let u0 = random(2, 32, 21, [1, 3])?;
    let lat = u0.lattice().clone();
    let plan = DiagnosticsPlan::new(1.0, 0.05, &[], &[]);
    let sim = simulate_field(
        Dynamics::new(&lat, 1.0, 0.05).with_fault(fault),
        u0,
        h * steps as f64,
        TimeStep::Fixed(h),
        1,
        plan,
    );
    Ok(sim.records)
}

fn energy_monotonicity(fault: Fault) -> Result<PropertyResult> {
    let recs = viscous_run(fault, 2e-3, 100)?;
    let worst = recs
        .windows(2)
        .map(|w| nan_is_fail(w[1].energy - w[0].energy))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(result("energy_monotonicity", worst, 1e-10, "max E(t_{j+1}) − E(t_j) on a viscous run".into()))
}

fn energy_balance(fault: Fault) -> Result<PropertyResult> {
    // A coarse grid and a spin-up long enough for the cascade to reach the
    // cutoff, so that aliasing errors (if any) act on the measured window.
    let (nu, h) = (0.02, 5e-5);
    let u0 = random_band_limited(
        &WavenumberLattice::new(2, 16)?,
        &InitialConditionSpec::random_band(5.0, 21, 1, 3),
    )?;
    let lat = u0.lattice().clone();
    let dynamics = Dynamics::new(&lat, 1.0, nu).with_fault(fault);
    let mut spun = SolverState::new(u0);
    let _ = Integrator::new(dynamics.clone()).advance_fixed(&mut spun, 2e-3, 250);
    let plan = DiagnosticsPlan::new(1.0, nu, &[], &[]);
    let sim = simulate_field(dynamics, spun.u, spun.t + 40.0 * h, TimeStep::Fixed(h), 1, plan);
    let mut worst: f64 = 0.0;
    for w in sim.records.windows(3) {
        let dedt = (w[2].energy - w[0].energy) / (w[2].t - w[0].t);
        let d = w[1].dissipation_rate;
        worst = worst.max(nan_is_fail(((dedt + d) / d).abs()));
    }
    Ok(result("energy_balance", worst, 1e-6, "centered dE/dt vs −ν‖(−Δ)^{α/2}u‖² after spin-up".into()))
}

fn interpolation_invariance(_: Fault) -> Result<PropertyResult> {
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for (l, m) in [(0.0, 2.0), (1.0, 3.0), (2.0, 4.0)] {
            let base = interpolation_ratio(n, l, m, 1.0)?;
            for sigma in [0.25, 0.5, 2.0, 4.0] {
                worst = worst.max(((interpolation_ratio(n, l, m, sigma)? - base) / base).abs());
            }
        }
    }
    Ok(result("interpolation_ratio", worst, 1e-10, "σ-spread of M_ℓ/M_m^{(ℓ+n/2)/(m+n/2)}".into()))
}

fn gaussian_oracle(_: Fault) -> Result<PropertyResult> {
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for ell in [0.0, 1.0, 2.0, 3.0, 4.0] {
            for sigma in [0.25, 1.0, 4.0] {
                let a = gaussian_moment(n, ell, sigma);
                let b = gaussian_moment_quadrature(n, ell, sigma);
                worst = worst.max(((a - b) / a).abs());
            }
        }
    }
    Ok(result("gaussian_oracle", worst, 1e-10, "closed form vs radial quadrature".into()))
}

fn max_norm_bound(_: Fault) -> Result<PropertyResult> {
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..10 {
        let u = random(2, 32, seed, [1, 6])?;
        for order in 0..=2 {
            for c in max_norm_bound_check(&u, order) {
                worst = worst.max(c.lhs - c.rhs);
            }
        }
    }
    Ok(result("max_norm_bound", worst, 1e-10, "max ‖∂^β u_i‖_∞ − M_|β|(û_i) over 10 fields".into()))
}

fn moment_inequality_taylor_green(fault: Fault) -> Result<PropertyResult> {
    let lat = WavenumberLattice::new(2, 32)?;
    let plan = DiagnosticsPlan::new(1.0, 1.0, &[], &[]).with_prop1(&[0, 1, 2]);
    let rhs0 = prop1_terms(&plan.record(&taylor_green(&lat, 1.0), 0, 0.0), 0, 0, 1.0, 1.0)?.rhs;
    let hand = 2.0 * 2f64.sqrt() - 1.0;
    let sim = simulate_field(
        Dynamics::new(&lat, 1.0, 1.0).with_fault(fault),
        taylor_green(&lat, 1.0),
        0.02,
        TimeStep::Fixed(1e-4),
        10,
        plan,
    );
    let mut violation = f64::NEG_INFINITY;
    for m in 0..=2 {
        for i in 0..2 {
            for s in prop1_series(&sim.records, i, m, 1.0, 1.0)? {
                violation = violation.max(nan_is_fail(-(s.residual + s.tolerance)));
            }
        }
    }
    let value = (rhs0 - hand).abs().max(violation.max(0.0));
    Ok(result(
        "moment_inequality_taylor_green",
        value,
        1e-6,
        format!("t=0 RHS {rhs0} vs 2√2−1; worst violation {violation:e}"),
    ))
}

fn scaling_identities(_: Fault) -> Result<PropertyResult> {
    let mut worst: f64 = 0.0;
    let u = random(2, 32, 3, [1, 3])?;
    let u3 = random(3, 24, 3, [1, 2])?;
    for alpha in [0.75, 1.0, 1.25] {
        for q in [2, 3] {
            for field in [&u, &u3] {
                let n = field.dim() as f64;
                let r = scaled_energy_ratio(field, q, alpha)?;
                let expect = (q as f64).powf(4.0 * alpha - 2.0 - n);
                worst = worst.max(((r - expect) / expect).abs());
            }
        }
    }
    let margins_exact = (2..=64).all(|n| solvability_margin(n, lions_exponent(n)).value == 0.into());
    let value = if margins_exact { worst } else { f64::INFINITY };
    Ok(result("scaling_identities", value, 1e-12, "energy ratio q^{4α−2−n}; margin zero at α_L(n)".into()))
}

/// Runs the properties whose name contains `filter` (all when `None`).
pub fn verify(filter: Option<&str>) -> Result<VerifyReport> {
    verify_with_fault(filter, Fault::None)
}

pub fn verify_with_fault(filter: Option<&str>, fault: Fault) -> Result<VerifyReport> {
    let mut results = Vec::new();
    for (name, check) in PROPERTIES {
        if filter.map_or(true, |f| name.contains(f)) {
            results.push(check(fault)?);
        }
    }
    Ok(VerifyReport { passed: results.iter().all(|r| r.passed), fault: format!("{fault:?}"), results })
}
