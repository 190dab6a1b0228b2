//! Norms and integral quantities of a spectral velocity field.
//!
//! Everything uses Parseval on the torus: `∫|f|² dx = (2π)^n Σ_k |f̂(k)|²`.
//! Fourier moments are plain mode sums without a `Δk` weight.

use crate::error::Result;
use crate::spectral::{self, SpectralVectorField, Vorticity};

/// Kinetic energy `½‖u‖²`.
pub fn energy(u: &SpectralVectorField) -> f64 {
    0.5 * u.lattice().volume() * u.squared_norm()
}

/// `ν ‖(−Δ)^{α/2} u‖² = ν (2π)^n Σ_k |k|^{2α} |û(k)|²`.
pub fn dissipation_rate(u: &SpectralVectorField, alpha: f64, nu: f64) -> f64 {
    let lat = u.lattice();
    let mut sum = 0.0;
    for idx in 1..lat.total_modes() {
        let w = lat.kmod2(idx).powf(alpha);
        let a: f64 = u.components().iter().map(|c| c[idx].norm_sqr()).sum();
        sum += w * a;
    }
    nu * lat.volume() * sum
}

/// Fourier moment `M_m(û_i) = Σ_k |k|^m |û_i(k)|`.
pub fn moment_norm(u: &SpectralVectorField, component: usize, order: f64) -> f64 {
    moment_of(u.lattice(), u.component(component), order)
}

pub(crate) fn moment_of(
    lattice: &spectral::WavenumberLattice,
    coeffs: &[num_complex::Complex64],
    order: f64,
) -> f64 {
    let half = 0.5 * order;
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
        .map(|(idx, z)| {
            let k2 = lattice.kmod2(idx);
            let w = if order == 0.0 { 1.0 } else { k2.powf(half) };
            w * z.norm()
        })
        .sum()
}

/// `½‖ω‖²`.
pub fn enstrophy(u: &SpectralVectorField) -> Result<f64> {
    let w = spectral::vorticity(u)?;
    Ok(0.5 * u.lattice().volume() * w.squared_norm())
}

/// Vortex-stretching term `⟨ω·∇u, ω⟩ = ∫ Σ_ij ω_i (∂_i u_j) ω_j dx`.
///
/// Identically zero in 2D. In 3D the integrand is evaluated on the grid and
/// summed with the trapezoid rule, which is exact here because the product of
/// three dealiased fields stays below the grid's aliasing limit.
pub fn enstrophy_production(u: &SpectralVectorField) -> Result<f64> {
    let Vorticity::Spatial(w) = spectral::vorticity(u)? else {
        return Ok(0.0);
    };
    let lat = u.lattice();
    let dim = lat.dim();

    let mut spectral_arrays: Vec<Vec<num_complex::Complex64>> = w.into_components();
    for i in 0..dim {
        for j in 0..dim {
            spectral_arrays.push(spectral::spectral_derivative(u, j, i).into_coeffs());
        }
    }
    let refs: Vec<&[num_complex::Complex64]> =
        spectral_arrays.iter().map(|c| c.as_slice()).collect();
    let phys = spectral::transform::inverse_real(lat, &refs);
    let (omega, grad) = phys.split_at(dim);

    let mut sum = 0.0;
    for p in 0..lat.total_modes() {
        for i in 0..dim {
            for j in 0..dim {
                // grad[i*dim + j] = ∂_i u_j
                sum += omega[i][p] * grad[i * dim + j][p] * omega[j][p];
            }
        }
    }
    Ok(sum * lat.cell_volume())
}

/// Inhomogeneous Sobolev norm `sqrt((2π)^n Σ (1+|k|²)^β |û|²)`.
pub fn sobolev_norm(u: &SpectralVectorField, beta: f64) -> f64 {
    let lat = u.lattice();
    let mut sum = 0.0;
    for idx in 0..lat.total_modes() {
        let a: f64 = u.components().iter().map(|c| c[idx].norm_sqr()).sum();
        if a > 0.0 {
            sum += (1.0 + lat.kmod2(idx)).powf(beta) * a;
        }
    }
    (lat.volume() * sum).sqrt()
}

/// Fraction of the energy in the shell `|k| ∈ [N/3 − 1, N/3)`.
pub fn tail_fraction(u: &SpectralVectorField) -> f64 {
    let lat = u.lattice();
    let cutoff = lat.resolution() as f64 / 3.0;
    let (lo, hi) = ((cutoff - 1.0).powi(2), cutoff * cutoff);
    let mut total = 0.0;
    let mut tail = 0.0;
    for idx in 0..lat.total_modes() {
        let a: f64 = u.components().iter().map(|c| c[idx].norm_sqr()).sum();
        total += a;
        let k2 = lat.kmod2(idx);
        if k2 >= lo && k2 < hi {
            tail += a;
        }
    }
    if total > 0.0 {
        (tail / total).clamp(0.0, 1.0)
    } else if total.is_nan() {
        f64::NAN
    } else {
        0.0
    }
}
