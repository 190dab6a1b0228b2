use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub const MIN_RESOLUTION: usize = 8;
pub const MAX_RESOLUTION: usize = 512;

/// Discrete Fourier lattice of the torus `[0, 2π)^n` with `N` modes per axis.
///
/// Flat indices are row-major with the last axis fastest, and each axis uses
/// the standard FFT ordering `0, 1, …, N/2−1, −N/2, …, −1`. The lattice also
/// owns the FFT plans, so cloning it is cheap and every field built on it
/// shares them.
#[derive(Clone)]
pub struct WavenumberLattice {
    inner: Arc<Inner>,
}

struct Inner {
    dim: usize,
    resolution: usize,
    modes: Vec<[i64; 3]>,
    kmod2: Vec<f64>,
    mask: Vec<bool>,
    negated: Vec<usize>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl WavenumberLattice {
    pub fn new(dim: usize, resolution: usize) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if resolution % 2 != 0 || !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
            return Err(Error::InvalidResolution(resolution));
        }

        let n = resolution;
        let total = n.pow(dim as u32);
        let cutoff = n as f64 / 3.0;

        let mut modes = Vec::with_capacity(total);
        let mut kmod2 = Vec::with_capacity(total);
        let mut mask = Vec::with_capacity(total);
        let mut negated = Vec::with_capacity(total);

        for idx in 0..total {
            let digits = digits_of(idx, dim, n);
            let mut k = [0i64; 3];
            let mut neg_digits = [0usize; 3];
            for a in 0..dim {
                k[a] = signed_mode(digits[a], n);
                neg_digits[a] = (n - digits[a]) % n;
            }
            let k2: i64 = k.iter().map(|&c| c * c).sum();
            modes.push(k);
            kmod2.push(k2 as f64);
            mask.push(k[..dim].iter().all(|&c| (c.abs() as f64) < cutoff));
            negated.push(flat_of(&neg_digits, dim, n));
        }

        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);

        Ok(Self {
            inner: Arc::new(Inner {
                dim,
                resolution: n,
                modes,
                kmod2,
                mask,
                negated,
                forward,
                inverse,
            }),
        })
    }

    /// Spatial dimension `n`.
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// Modes per axis `N`.
    pub fn resolution(&self) -> usize {
        self.inner.resolution
    }

    pub fn domain_length(&self) -> f64 {
        2.0 * std::f64::consts::PI
    }

    /// Physical grid spacing `2π/N`.
    pub fn grid_spacing(&self) -> f64 {
        self.domain_length() / self.inner.resolution as f64
    }

    pub fn total_modes(&self) -> usize {
        self.inner.modes.len()
    }

    /// Integer mode vector at a flat index. Unused trailing components are zero.
    pub fn k_of(&self, index: usize) -> [i64; 3] {
        self.inner.modes[index]
    }

    /// Wavenumber used by odd-order derivatives: the Nyquist component `−N/2`
    /// has no conjugate partner, so it is taken as 0 to keep real fields real.
    pub fn k_odd(&self, index: usize) -> [i64; 3] {
        let nyquist = -(self.inner.resolution as i64) / 2;
        self.inner.modes[index].map(|c| if c == nyquist { 0 } else { c })
    }

    pub fn kmod(&self, index: usize) -> f64 {
        self.inner.kmod2[index].sqrt()
    }

    /// `|k|²`, exact as an integer-valued float.
    pub fn kmod2(&self, index: usize) -> f64 {
        self.inner.kmod2[index]
    }

    /// True iff every `|k_j| < N/3`.
    pub fn dealias_mask(&self, index: usize) -> bool {
        self.inner.mask[index]
    }

    /// Flat index of `−k`.
    pub fn negated(&self, index: usize) -> usize {
        self.inner.negated[index]
    }

    /// Flat index of the mode `k`, or `None` if it is outside the lattice.
    pub fn index_of(&self, k: &[i64]) -> Option<usize> {
        let n = self.inner.resolution as i64;
        if k.len() != self.inner.dim {
            return None;
        }
        let mut digits = [0usize; 3];
        for (a, &c) in k.iter().enumerate() {
            if c < -n / 2 || c >= n / 2 {
                return None;
            }
            digits[a] = c.rem_euclid(n) as usize;
        }
        Some(flat_of(&digits, self.inner.dim, self.inner.resolution))
    }

    /// Coordinates of a physical grid point, `x_a = 2π i_a / N`.
    pub fn grid_point(&self, index: usize) -> [f64; 3] {
        let d = digits_of(index, self.inner.dim, self.inner.resolution);
        let h = self.grid_spacing();
        [d[0] as f64 * h, d[1] as f64 * h, d[2] as f64 * h]
    }

    /// Quadrature weight of one grid cell, `(2π/N)^n`.
    pub fn cell_volume(&self) -> f64 {
        self.grid_spacing().powi(self.inner.dim as i32)
    }

    /// `(2π)^n`, the torus volume.
    pub fn volume(&self) -> f64 {
        self.domain_length().powi(self.inner.dim as i32)
    }

    pub(crate) fn forward_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inner.forward
    }

    pub(crate) fn inverse_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inner.inverse
    }

    pub(crate) fn kmod2_slice(&self) -> &[f64] {
        &self.inner.kmod2
    }

    pub(crate) fn mask_slice(&self) -> &[bool] {
        &self.inner.mask
    }
}

impl PartialEq for WavenumberLattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dim == other.inner.dim
                && self.inner.resolution == other.inner.resolution)
    }
}

impl fmt::Debug for WavenumberLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WavenumberLattice")
            .field("dim", &self.inner.dim)
            .field("resolution", &self.inner.resolution)
            .finish()
    }
}

fn signed_mode(digit: usize, n: usize) -> i64 {
    if digit < n / 2 {
        digit as i64
    } else {
        digit as i64 - n as i64
    }
}

fn digits_of(mut idx: usize, dim: usize, n: usize) -> [usize; 3] {
    let mut d = [0usize; 3];
    for a in (0..dim).rev() {
        d[a] = idx % n;
        idx /= n;
    }
    d
}

fn flat_of(digits: &[usize; 3], dim: usize, n: usize) -> usize {
    digits[..dim].iter().fold(0, |acc, &d| acc * n + d)
}
