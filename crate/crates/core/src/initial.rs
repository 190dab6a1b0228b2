//! Smooth, zero-mean, divergence-free initial fields.

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::diagnostics::energy;
use crate::error::{Error, Result};
use crate::spectral::{leray_project_in_place, SpectralVectorField, WavenumberLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    TaylorGreen,
    RandomBand,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConditionSpec {
    pub kind: InitialKind,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default)]
    pub seed: u64,
    /// Inclusive shell bounds `[k_min, k_max]` on `|k|`.
    #[serde(default = "default_band")]
    pub band: [u32; 2],
    /// Exponent `s` in `|û(k)| ∝ |k|^s` before projection and normalization.
    #[serde(default)]
    pub spectrum_slope: f64,
}

fn default_amplitude() -> f64 {
    1.0
}

fn default_band() -> [u32; 2] {
    [1, 4]
}

impl InitialConditionSpec {
    pub fn taylor_green(amplitude: f64) -> Self {
        Self {
            kind: InitialKind::TaylorGreen,
            amplitude,
            seed: 0,
            band: default_band(),
            spectrum_slope: 0.0,
        }
    }

    pub fn random_band(amplitude: f64, seed: u64, k_min: u32, k_max: u32) -> Self {
        Self {
            kind: InitialKind::RandomBand,
            amplitude,
            seed,
            band: [k_min, k_max],
            spectrum_slope: 0.0,
        }
    }

    pub fn validate(&self, resolution: usize) -> Result<()> {
        if !(self.amplitude > 0.0 && self.amplitude.is_finite()) {
            return Err(Error::config("initial.amplitude", "must be positive and finite"));
        }
        if self.kind == InitialKind::RandomBand {
            let [lo, hi] = self.band;
            if lo > hi {
                return Err(Error::config("initial.band", "k_min must not exceed k_max"));
            }
            if hi as f64 >= resolution as f64 / 3.0 {
                return Err(Error::config(
                    "initial.band",
                    format!("k_max = {hi} must be below N/3 = {:.3}", resolution as f64 / 3.0),
                ));
            }
            if !self.spectrum_slope.is_finite() {
                return Err(Error::config("initial.spectrum_slope", "must be finite"));
            }
        }
        Ok(())
    }

    pub fn build(&self, lattice: &WavenumberLattice) -> Result<SpectralVectorField> {
        self.validate(lattice.resolution())?;
        match self.kind {
            InitialKind::TaylorGreen => Ok(taylor_green(lattice, self.amplitude)),
            InitialKind::RandomBand => random_band_limited(lattice, self),
        }
    }
}

#[derive(Clone, Copy)]
enum Factor {
    Sin,
    Cos,
}

impl Factor {
    /// Coefficient of `e^{i s x}` for `s = ±1`.
    fn coeff(self, s: i64) -> Complex64 {
        match self {
            Factor::Cos => Complex64::new(0.5, 0.0),
            Factor::Sin => Complex64::new(0.0, -0.5 * s as f64),
        }
    }
}

/// Adds `scale · Π_a factor_a(x_a)` to a component, spectrally and exactly.
fn add_separable(
    lattice: &WavenumberLattice,
    coeffs: &mut [Complex64],
    factors: &[Factor],
    scale: f64,
) {
    let dim = lattice.dim();
    for signs in 0..(1usize << dim) {
        let mut k = [0i64; 3];
        let mut c = Complex64::new(scale, 0.0);
        for a in 0..dim {
            let s = if signs >> a & 1 == 0 { 1 } else { -1 };
            k[a] = s;
            c *= factors[a].coeff(s);
        }
        let idx = lattice.index_of(&k[..dim]).expect("unit modes exist");
        coeffs[idx] += c;
    }
}

/// Taylor-Green vortex.
///
/// 2D: `A (sin x cos y, −cos x sin y)`; 3D: `A (sin x cos y cos z, −cos x sin y cos z, 0)`.
pub fn taylor_green(lattice: &WavenumberLattice, amplitude: f64) -> SpectralVectorField {
    use Factor::{Cos, Sin};
    let mut u = SpectralVectorField::zeros(lattice);
    let (f1, f2): (&[Factor], &[Factor]) = match lattice.dim() {
        2 => (&[Sin, Cos], &[Cos, Sin]),
        _ => (&[Sin, Cos, Cos], &[Cos, Sin, Cos]),
    };
    add_separable(lattice, u.component_mut(0), f1, amplitude);
    add_separable(lattice, u.component_mut(1), f2, -amplitude);
    u
}

/// Name of the random-field generator. Bump the suffix if the draw order or
/// the transform from bits to Gaussians ever changes.
pub const GENERATOR_ID: &str = "chacha20-boxmuller-v1";

/// Seeded standard normal source.
///
/// ChaCha20 keyed by the seed (little-endian in the first 8 key bytes, rest
/// zero), 64-bit block counter starting at 0. Each uniform takes the top 53
/// bits of one `u64` word, `u = (w >> 11 + 1) · 2⁻⁵³ ∈ (0, 1]`, and pairs of
/// uniforms become normals by Box-Muller using the portable `libm` routines,
/// so the stream is bit-identical on every platform.
pub struct GaussianStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Self {
            rng: ChaCha20Rng::from_seed(key),
            spare: None,
        }
    }

    fn uniform(&mut self) -> f64 {
        let w = self.rng.next_u64();
        ((w >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}

/// `k` lies in the open half-space whose first nonzero component is positive.
fn in_half_space(k: &[i64]) -> bool {
    k.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Random divergence-free field supported on the shell band, with energy `amplitude²`.
///
/// Modes are visited in flat index order; for each half-space mode in the band
/// one complex normal per component is drawn (real part first), scaled by
/// `|k|^s`, and mirrored onto `−k` as its conjugate.
pub fn random_band_limited(
    lattice: &WavenumberLattice,
    spec: &InitialConditionSpec,
) -> Result<SpectralVectorField> {
    spec.validate(lattice.resolution())?;
    let [k_min, k_max] = spec.band;
    let (lo2, hi2) = ((k_min as f64).powi(2), (k_max as f64).powi(2));
    let dim = lattice.dim();
    let mut rng = GaussianStream::new(spec.seed);
    let mut u = SpectralVectorField::zeros(lattice);

    for idx in 1..lattice.total_modes() {
        let k = lattice.k_of(idx);
        let k2 = lattice.kmod2(idx);
        if k2 < lo2 || k2 > hi2 || !in_half_space(&k[..dim]) || !lattice.dealias_mask(idx) {
            continue;
        }
        let weight = libm::pow(k2, 0.5 * spec.spectrum_slope);
        let neg = lattice.negated(idx);
        for i in 0..dim {
            let re = rng.next_normal();
            let im = rng.next_normal();
            let z = Complex64::new(re, im) * weight;
            u.component_mut(i)[idx] = z;
            u.component_mut(i)[neg] = z.conj();
        }
    }

    leray_project_in_place(&mut u);
    let e = energy(&u);
    if e == 0.0 {
        return Err(Error::EmptyBand { k_min, k_max });
    }
    Ok(u.scaled(spec.amplitude / e.sqrt()))
}
