use serde::Serialize;

use crate::diagnostics::energy;
use crate::error::{Error, Result};
use crate::spectral::SpectralVectorField;

/// The symmetry `u_λ(x, t) = λ u(μx, τt)` of the unforced equations.
///
/// With `μ = λ^{1/(2α−1)}` and `τ = λ^{2α/(2α−1)}` both the advection and the
/// dissipation pick up the same factor, so `u_λ` is again a solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaleTransform {
    pub lambda: f64,
    pub alpha: f64,
    pub n: u32,
    pub mu: f64,
    pub tau: f64,
    /// `E(u_λ)/E(u) = μ^{4α−2−n}` on ℝⁿ.
    pub energy_exponent_q: f64,
    /// The same ratio as a power of `λ`: `2 − n/(2α−1)`.
    pub energy_exponent_lambda: f64,
}

impl ScaleTransform {
    pub fn new(lambda: f64, alpha: f64, n: u32) -> Result<Self> {
        if !(alpha > 0.5) {
            return Err(Error::DegenerateScaling { alpha });
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::config("lambda", "must be positive and finite"));
        }
        let s = 2.0 * alpha - 1.0;
        Ok(Self {
            lambda,
            alpha,
            n,
            mu: lambda.powf(1.0 / s),
            tau: lambda.powf(2.0 * alpha / s),
            energy_exponent_q: 4.0 * alpha - 2.0 - n as f64,
            energy_exponent_lambda: 2.0 - n as f64 / s,
        })
    }

    /// Transform whose space factor is the integer `q`, so `λ = q^{2α−1}`.
    pub fn from_q(q: u32, alpha: f64, n: u32) -> Result<Self> {
        if !(alpha > 0.5) {
            return Err(Error::DegenerateScaling { alpha });
        }
        let mut t = Self::new((q as f64).powf(2.0 * alpha - 1.0), alpha, n)?;
        t.mu = q as f64;
        t.tau = (q as f64).powf(2.0 * alpha);
        Ok(t)
    }
}

fn max_active_mode(u: &SpectralVectorField) -> i64 {
    let lat = u.lattice();
    let dim = lat.dim();
    (0..lat.total_modes())
        .filter(|&idx| u.at(idx)[..dim].iter().any(|z| z.re != 0.0 || z.im != 0.0))
        .map(|idx| lat.k_of(idx)[..dim].iter().map(|k| k.abs()).max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

/// `û'(qk) = q^{2α−1} û(k)`, zero off the sublattice `qℤⁿ`.
///
/// This is `u_q(x, t) = q^{2α−1} u(qx, q^{2α} t)` on the torus; the result's time
/// is `u.time / q^{2α}`. Fails if `q` times the highest active mode would leave
/// the dealiased band.
pub fn apply_discrete_rescale(u: &SpectralVectorField, q: u32, alpha: f64) -> Result<SpectralVectorField> {
    let lat = u.lattice();
    let limit = lat.resolution() as f64 / 3.0;
    let max_mode = max_active_mode(u);
    if q == 0 || (max_mode * q as i64) as f64 >= limit {
        return Err(Error::RescaleOverflow { q, max_mode, limit });
    }
    let dim = lat.dim();
    let factor = (q as f64).powf(2.0 * alpha - 1.0);
    let mut out = SpectralVectorField::zeros(lat);
    for idx in 0..lat.total_modes() {
        let v = u.at(idx);
        if v[..dim].iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            continue;
        }
        let k = lat.k_of(idx);
        let target: Vec<i64> = k[..dim].iter().map(|&kj| kj * q as i64).collect();
        let t = lat.index_of(&target).expect("checked against the dealias limit");
        let scaled: Vec<_> = v[..dim].iter().map(|z| z * factor).collect();
        out.set(t, &scaled);
    }
    out.time = u.time / (q as f64).powf(2.0 * alpha);
    Ok(out)
}

/// Zeroes every mode that [`apply_discrete_rescale`] with this `q` could not
/// carry. Returns the truncated field and the fraction of energy removed.
pub fn truncate_for_rescale(u: &SpectralVectorField, q: u32) -> (SpectralVectorField, f64) {
    let lat = u.lattice();
    let dim = lat.dim();
    let limit = lat.resolution() as f64 / 3.0;
    let mut out = u.clone();
    for idx in 0..lat.total_modes() {
        let kmax = lat.k_of(idx)[..dim].iter().map(|k| k.abs()).max().unwrap_or(0);
        if (kmax * q as i64) as f64 >= limit {
            let zero = [num_complex::Complex64::new(0.0, 0.0); 3];
            out.set(idx, &zero[..dim]);
        }
    }
    let e = energy(u);
    let dropped = if e > 0.0 { ((e - energy(&out)) / e).max(0.0) } else { 0.0 };
    (out, dropped)
}

/// `E(u_q) q^{−n} / E(u)`.
///
/// On the fixed torus the rescaled field is `q`-periodic copies of a squeezed
/// `u`, so its energy lacks the `q^{−n}` Jacobian a change of variables on ℝⁿ
/// would produce. Multiplying it back gives the ℝⁿ ratio `q^{4α−2−n}`.
pub fn scaled_energy_ratio(u: &SpectralVectorField, q: u32, alpha: f64) -> Result<f64> {
    let n = u.dim() as i32;
    let uq = apply_discrete_rescale(u, q, alpha)?;
    Ok(energy(&uq) * (q as f64).powi(-n) / energy(u))
}
