use num_complex::Complex64;

use super::field::{SpectralScalar, SpectralVectorField};
use crate::error::{Error, Result};

/// Orthogonal projection onto divergence-free fields, `û ← û − k (k·û)/|k|²`.
/// The `k = 0` mode is left as is.
pub fn leray_project(u: &SpectralVectorField) -> SpectralVectorField {
    let mut out = u.clone();
    leray_project_in_place(&mut out);
    out
}

pub fn leray_project_in_place(u: &mut SpectralVectorField) {
    let lat = u.lattice().clone();
    let dim = lat.dim();
    for idx in 1..lat.total_modes() {
        let k = lat.k_odd(idx);
        let k2: f64 = k.iter().map(|&c| (c * c) as f64).sum();
        if k2 == 0.0 {
            continue;
        }
        let v = u.at(idx);
        let dot: Complex64 = (0..dim).map(|j| v[j] * k[j] as f64).sum();
        if dot == Complex64::new(0.0, 0.0) {
            continue;
        }
        let s = dot / k2;
        for (j, comp) in (0..dim).zip(v) {
            u.component_mut(j)[idx] = comp - s * k[j] as f64;
        }
    }
}

/// Multiplies component `i` by `i k_axis`.
pub fn spectral_derivative(u: &SpectralVectorField, component: usize, axis: usize) -> SpectralScalar {
    derivative_of(u.lattice(), u.component(component), axis)
}

pub fn derivative_of(
    lattice: &super::WavenumberLattice,
    coeffs: &[Complex64],
    axis: usize,
) -> SpectralScalar {
    let out = coeffs
        .iter()
        .enumerate()
        .map(|(idx, z)| {
            let k = lattice.k_odd(idx)[axis] as f64;
            Complex64::new(-k * z.im, k * z.re)
        })
        .collect();
    SpectralScalar::from_coeffs(lattice, out).expect("same lattice")
}

/// Zeroes every mode outside the 2/3-rule mask.
pub fn dealias(u: &SpectralVectorField) -> SpectralVectorField {
    let mut out = u.clone();
    dealias_in_place(&mut out);
    out
}

pub fn dealias_in_place(u: &mut SpectralVectorField) {
    let lat = u.lattice().clone();
    let mask = lat.mask_slice();
    for i in 0..u.dim() {
        for (z, &keep) in u.component_mut(i).iter_mut().zip(mask) {
            if !keep {
                *z = Complex64::new(0.0, 0.0);
            }
        }
    }
}

pub fn dealias_scalar_in_place(s: &mut SpectralScalar) {
    let lat = s.lattice().clone();
    for (z, &keep) in s.coeffs_mut().iter_mut().zip(lat.mask_slice()) {
        if !keep {
            *z = Complex64::new(0.0, 0.0);
        }
    }
}

/// Curl of a velocity field: a scalar in 2D, a vector in 3D.
#[derive(Clone, Debug)]
pub enum Vorticity {
    Planar(SpectralScalar),
    Spatial(SpectralVectorField),
}

impl Vorticity {
    /// `Σ |ω̂(k)|²` over all modes and components.
    pub fn squared_norm(&self) -> f64 {
        match self {
            Vorticity::Planar(s) => s.squared_norm(),
            Vorticity::Spatial(v) => v.squared_norm(),
        }
    }
}

pub fn vorticity(u: &SpectralVectorField) -> Result<Vorticity> {
    let lat = u.lattice();
    match u.dim() {
        2 => {
            let dx_v = spectral_derivative(u, 1, 0);
            let dy_u = spectral_derivative(u, 0, 1);
            let coeffs = dx_v
                .coeffs()
                .iter()
                .zip(dy_u.coeffs())
                .map(|(a, b)| a - b)
                .collect();
            Ok(Vorticity::Planar(SpectralScalar::from_coeffs(lat, coeffs)?))
        }
        3 => {
            // ω_a = ∂_b u_c − ∂_c u_b for cyclic (a, b, c)
            let curl = |b: usize, c: usize| -> Vec<Complex64> {
                let p = spectral_derivative(u, c, b);
                let m = spectral_derivative(u, b, c);
                p.coeffs().iter().zip(m.coeffs()).map(|(x, y)| x - y).collect()
            };
            let comps = vec![curl(1, 2), curl(2, 0), curl(0, 1)];
            Ok(Vorticity::Spatial(SpectralVectorField::from_coeffs(lat, comps)?))
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{PhysicalVectorField, WavenumberLattice};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tg(lat: &WavenumberLattice) -> SpectralVectorField {
        PhysicalVectorField::from_fn(lat, |x| {
            [x[0].sin() * x[1].cos(), -x[0].cos() * x[1].sin(), 0.0]
        })
        .to_spectral()
    }

    #[test]
    fn projector_on_single_mode() {
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let mut u = SpectralVectorField::zeros(&lat);
        let idx = lat.index_of(&[1, 0]).unwrap();
        u.set(idx, &[c(0.3, -0.2), c(0.7, 0.1)]);
        let p = leray_project(&u);
        assert_eq!(p.at(idx)[0], c(0.0, 0.0));
        assert_eq!(p.at(idx)[1], c(0.7, 0.1));
    }

    #[test]
    fn gradients_project_to_zero() {
        let lat = WavenumberLattice::new(3, 8).unwrap();
        let mut u = SpectralVectorField::zeros(&lat);
        for idx in 0..lat.total_modes() {
            let k = lat.k_odd(idx);
            let phi = c((idx as f64).sin(), (idx as f64 * 0.37).cos());
            u.set(idx, &[phi * k[0] as f64, phi * k[1] as f64, phi * k[2] as f64]);
        }
        let p = leray_project(&u);
        assert!(p.max_amplitude() < 1e-15 * u.max_amplitude().max(1.0) * 10.0);
    }

    #[test]
    fn projector_fixes_divergence_free_fields() {
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let u = tg(&lat);
        let p = leray_project(&u);
        assert!(p.relative_distance(&u).unwrap() < 1e-15);
        assert!(u.max_divergence() < 1e-15);
    }

    #[test]
    fn derivative_of_sine() {
        // sin x has coefficients ∓i/2 at (±1, 0); ∂_x gives cos x with 1/2 at both.
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let u = PhysicalVectorField::from_fn(&lat, |x| [x[0].sin(), 0.0, 0.0]).to_spectral();
        let d = spectral_derivative(&u, 0, 0);
        for k in [[1, 0], [-1, 0]] {
            let idx = lat.index_of(&k).unwrap();
            assert!((d.coeffs()[idx] - c(0.5, 0.0)).norm() < 1e-15);
        }
        let dy = spectral_derivative(&u, 0, 1);
        assert!(dy.squared_norm() < 1e-30);
    }

    #[test]
    fn constant_has_no_derivative() {
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let mut u = SpectralVectorField::zeros(&lat);
        u.component_mut(0)[0] = c(2.0, 0.0);
        assert_eq!(spectral_derivative(&u, 0, 0).squared_norm(), 0.0);
        assert_eq!(vorticity(&u).unwrap().squared_norm(), 0.0);
    }

    #[test]
    fn dealias_behaviour() {
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let u = tg(&lat);
        assert!(dealias(&u).relative_distance(&u).unwrap() < 1e-15);

        let mut nyq = SpectralVectorField::zeros(&lat);
        nyq.set(lat.index_of(&[-4, 0]).unwrap(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(dealias(&nyq).max_amplitude(), 0.0);
    }

    #[test]
    fn taylor_green_vorticity() {
        // ω = ∂_x u_2 − ∂_y u_1 = 2 sin x sin y; sin x sin y has modes of modulus 1/4.
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let Vorticity::Planar(w) = vorticity(&tg(&lat)).unwrap() else {
            panic!("2D vorticity must be scalar");
        };
        for k in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
            let z = w.coeffs()[lat.index_of(&k).unwrap()];
            assert!((z.norm() - 0.5).abs() < 1e-15);
        }
        let expect: Vec<f64> = (0..lat.total_modes())
            .map(|i| {
                let x = lat.grid_point(i);
                2.0 * x[0].sin() * x[1].sin()
            })
            .collect();
        for (a, b) in w.to_physical().iter().zip(&expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn curl_of_gradient_vanishes_3d() {
        let lat = WavenumberLattice::new(3, 8).unwrap();
        let g = PhysicalVectorField::from_fn(&lat, |x| {
            // ∇(sin x cos 2y sin z)
            [
                x[0].cos() * (2.0 * x[1]).cos() * x[2].sin(),
                -2.0 * x[0].sin() * (2.0 * x[1]).sin() * x[2].sin(),
                x[0].sin() * (2.0 * x[1]).cos() * x[2].cos(),
            ]
        })
        .to_spectral();
        assert!(vorticity(&g).unwrap().squared_norm() < 1e-28);
    }
}
