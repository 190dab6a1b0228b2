//! Continuum moments of the L²-normalized Gaussian family
//! `f̃_σ(k) = σ^{n/2} e^{−σ²|k|²/2}` on ℝⁿ.

use crate::error::{Error, Result};

/// Surface area of the unit sphere in ℝⁿ, `2π^{n/2}/Γ(n/2)`.
pub fn sphere_area(n: u32) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / libm::tgamma(h)
}

/// `∫ |k|^ℓ f̃_σ(k) dk` in closed form.
pub fn gaussian_moment(n: u32, ell: f64, sigma: f64) -> f64 {
    let nf = n as f64;
    sigma.powf(nf / 2.0)
        * sphere_area(n)
        * 2f64.powf((ell + nf - 2.0) / 2.0)
        * libm::tgamma((ell + nf) / 2.0)
        * sigma.powf(-(ell + nf))
}

/// The same integral by double-exponential quadrature of the radial form.
pub fn gaussian_moment_quadrature(n: u32, ell: f64, sigma: f64) -> f64 {
    let nf = n as f64;
    let amp = sigma.powf(nf / 2.0);
    // e^{−σ²R²/2} = e^{−100}: far below double precision relative to the bulk.
    let r_max = (200f64).sqrt() / sigma;
    let radial = |r: f64| r.powf(nf - 1.0 + ell) * (-0.5 * sigma * sigma * r * r).exp();
    let scale = gaussian_moment(n, ell, sigma) / (amp * sphere_area(n));
    let out = quadrature::double_exponential::integrate(radial, 0.0, r_max, 1e-14 * scale);
    amp * sphere_area(n) * out.integral
}

/// `M_ℓ / M_m^{(ℓ+n/2)/(m+n/2)}`, which is independent of `σ`.
pub fn interpolation_ratio(n: u32, ell: f64, m: f64, sigma: f64) -> Result<f64> {
    if !(0.0 <= ell && ell <= m) {
        return Err(Error::config("ell", format!("need 0 ≤ ell ≤ m, got ell={ell}, m={m}")));
    }
    let h = n as f64 / 2.0;
    let p = (ell + h) / (m + h);
    Ok(gaussian_moment(n, ell, sigma) / gaussian_moment(n, m, sigma).powf(p))
}
