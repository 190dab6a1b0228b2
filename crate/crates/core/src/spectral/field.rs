use num_complex::Complex64;

use super::lattice::WavenumberLattice;
use super::transform;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Velocity field in Fourier space: one coefficient array per component.
#[derive(Clone, Debug)]
pub struct SpectralVectorField {
    lattice: WavenumberLattice,
    coeffs: Vec<Vec<Complex64>>,
    pub time: f64,
}

/// Real velocity samples on the uniform `N^n` grid.
#[derive(Clone, Debug)]
pub struct PhysicalVectorField {
    lattice: WavenumberLattice,
    values: Vec<Vec<f64>>,
}

/// A single spectral array (pressure, a derivative, 2D vorticity).
#[derive(Clone, Debug)]
pub struct SpectralScalar {
    lattice: WavenumberLattice,
    coeffs: Vec<Complex64>,
}

impl SpectralVectorField {
    pub fn zeros(lattice: &WavenumberLattice) -> Self {
        let total = lattice.total_modes();
        Self {
            lattice: lattice.clone(),
            coeffs: vec![vec![ZERO; total]; lattice.dim()],
            time: 0.0,
        }
    }

    pub fn from_coeffs(lattice: &WavenumberLattice, coeffs: Vec<Vec<Complex64>>) -> Result<Self> {
        if coeffs.len() != lattice.dim() || coeffs.iter().any(|c| c.len() != lattice.total_modes())
        {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self {
            lattice: lattice.clone(),
            coeffs,
            time: 0.0,
        })
    }

    pub fn lattice(&self) -> &WavenumberLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn component(&self, i: usize) -> &[Complex64] {
        &self.coeffs[i]
    }

    pub fn component_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.coeffs[i]
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.coeffs
    }

    pub fn into_components(self) -> Vec<Vec<Complex64>> {
        self.coeffs
    }

    /// Coefficient vector `û(k)` at a flat index.
    pub fn at(&self, index: usize) -> [Complex64; 3] {
        let mut v = [ZERO; 3];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] = c[index];
        }
        v
    }

    pub fn set(&mut self, index: usize, value: &[Complex64]) {
        for (c, &v) in self.coeffs.iter_mut().zip(value) {
            c[index] = v;
        }
    }

    /// Largest coefficient modulus over all components and modes.
    pub fn max_amplitude(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .flat_map(|c| c.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `max_k |û(−k) − conj(û(k))|`; zero for a real physical field.
    pub fn hermitian_defect(&self) -> f64 {
        let lat = &self.lattice;
        self.coeffs
            .iter()
            .flat_map(|c| (0..c.len()).map(move |idx| (c[lat.negated(idx)] - c[idx].conj()).norm()))
            .fold(0.0, f64::max)
    }

    /// `max_k |Σ_j k_j û_j(k)|`, with the Nyquist wavenumber taken as 0.
    pub fn max_divergence(&self) -> f64 {
        let lat = &self.lattice;
        (0..lat.total_modes())
            .map(|idx| {
                let k = lat.k_odd(idx);
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c[idx] * k[j] as f64)
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// `Σ_i Σ_k |û_i(k)|²`.
    pub fn squared_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|c| c.iter())
            .map(|z| z.norm_sqr())
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.coeffs
            .iter_mut()
            .flat_map(|c| c.iter_mut())
            .for_each(|z| *z *= factor);
        out
    }

    /// `‖self − other‖ / ‖other‖` over all coefficients (absolute when `other` is zero).
    pub fn relative_distance(&self, other: &Self) -> Result<f64> {
        if self.lattice != other.lattice {
            return Err(Error::ShapeMismatch);
        }
        let diff: f64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .flat_map(|(a, b)| a.iter().zip(b.iter()))
            .map(|(x, y)| (x - y).norm_sqr())
            .sum();
        let reference = other.squared_norm();
        Ok(if reference > 0.0 {
            (diff / reference).sqrt()
        } else {
            diff.sqrt()
        })
    }

    pub fn to_physical(&self) -> PhysicalVectorField {
        let refs: Vec<&[Complex64]> = self.coeffs.iter().map(|c| c.as_slice()).collect();
        PhysicalVectorField {
            lattice: self.lattice.clone(),
            values: transform::inverse_real(&self.lattice, &refs),
        }
    }
}

impl PhysicalVectorField {
    pub fn from_values(lattice: &WavenumberLattice, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != lattice.dim() || values.iter().any(|v| v.len() != lattice.total_modes())
        {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self {
            lattice: lattice.clone(),
            values,
        })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(lattice: &WavenumberLattice, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        let dim = lattice.dim();
        let mut values = vec![Vec::with_capacity(lattice.total_modes()); dim];
        for idx in 0..lattice.total_modes() {
            let v = f(lattice.grid_point(idx));
            for (i, comp) in values.iter_mut().enumerate() {
                comp.push(v[i]);
            }
        }
        Self {
            lattice: lattice.clone(),
            values,
        }
    }

    pub fn lattice(&self) -> &WavenumberLattice {
        &self.lattice
    }

    pub fn component(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Trapezoid quadrature of `|f|²` over the torus.
    pub fn l2_norm_squared(&self) -> f64 {
        let sum: f64 = self.values.iter().flat_map(|v| v.iter()).map(|x| x * x).sum();
        sum * self.lattice.cell_volume()
    }

    pub fn to_spectral(&self) -> SpectralVectorField {
        let refs: Vec<&[f64]> = self.values.iter().map(|v| v.as_slice()).collect();
        SpectralVectorField {
            lattice: self.lattice.clone(),
            coeffs: transform::forward_real(&self.lattice, &refs),
            time: 0.0,
        }
    }
}

impl SpectralScalar {
    pub fn zeros(lattice: &WavenumberLattice) -> Self {
        Self {
            lattice: lattice.clone(),
            coeffs: vec![ZERO; lattice.total_modes()],
        }
    }

    pub fn from_coeffs(lattice: &WavenumberLattice, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != lattice.total_modes() {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self {
            lattice: lattice.clone(),
            coeffs,
        })
    }

    pub fn lattice(&self) -> &WavenumberLattice {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn to_physical(&self) -> Vec<f64> {
        transform::inverse_real(&self.lattice, &[&self.coeffs])
            .pop()
            .unwrap_or_default()
    }

    pub fn from_physical(lattice: &WavenumberLattice, values: &[f64]) -> Self {
        Self {
            lattice: lattice.clone(),
            coeffs: transform::forward_real(lattice, &[values])
                .pop()
                .unwrap_or_default(),
        }
    }

    pub fn squared_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taylor_green_physical(lat: &WavenumberLattice) -> PhysicalVectorField {
        PhysicalVectorField::from_fn(lat, |x| {
            [
                x[0].sin() * x[1].cos(),
                -x[0].cos() * x[1].sin(),
                0.0,
            ]
        })
    }

    #[test]
    fn taylor_green_has_four_quarter_modes() {
        // sin x cos y = (1/4i)(e^{i(x+y)} + e^{i(x−y)} − e^{−i(x−y)} − e^{−i(x+y)})
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let u = taylor_green_physical(&lat).to_spectral();
        let c = u.component(0);
        let q = Complex64::new(0.0, -0.25);
        for (k, v) in [([1, 1], q), ([1, -1], q), ([-1, 1], -q), ([-1, -1], -q)] {
            assert!((c[lat.index_of(&k).unwrap()] - v).norm() < 1e-15);
        }
        let nonzero = c.iter().filter(|z| z.norm() > 1e-14).count();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn zero_field_transforms_to_zero() {
        let lat = WavenumberLattice::new(3, 8).unwrap();
        let z = PhysicalVectorField::from_fn(&lat, |_| [0.0; 3]).to_spectral();
        assert_eq!(z.max_amplitude(), 0.0);
    }

    #[test]
    fn round_trip_and_parseval() {
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let f = taylor_green_physical(&lat);
        let spec = f.to_spectral();
        let back = spec.to_physical();
        for i in 0..2 {
            for (a, b) in f.component(i).iter().zip(back.component(i)) {
                assert!((a - b).abs() < 1e-14);
            }
        }
        let parseval = lat.volume() * spec.squared_norm();
        assert!((f.l2_norm_squared() - parseval).abs() < 1e-12 * parseval);
        assert!(spec.hermitian_defect() == 0.0);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let lat = WavenumberLattice::new(2, 8).unwrap();
        assert!(SpectralVectorField::from_coeffs(&lat, vec![vec![ZERO; 64]]).is_err());
        assert!(SpectralScalar::from_coeffs(&lat, vec![ZERO; 63]).is_err());
        let other = WavenumberLattice::new(2, 10).unwrap();
        let a = SpectralVectorField::zeros(&lat);
        let b = SpectralVectorField::zeros(&other);
        assert!(a.relative_distance(&b).is_err());
    }
}
