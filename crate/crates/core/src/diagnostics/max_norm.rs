use num_complex::Complex64;
use serde::Serialize;

use super::norms::moment_norm;
use crate::spectral::{transform, SpectralVectorField};

/// Slack allowed for rounding in `lhs ≤ rhs`.
pub const MAX_NORM_SLACK: f64 = 1e-10;

/// `‖∂_axis^order u_i‖_∞` against `M_order(û_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxNormCheck {
    pub component: usize,
    pub axis: usize,
    pub order: u32,
    pub lhs: f64,
    pub rhs: f64,
}

impl MaxNormCheck {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + MAX_NORM_SLACK
    }
}

/// `(i k)^p` as an exact complex factor.
fn ik_pow(k: i64, p: u32) -> Complex64 {
    let mag = (k as f64).powi(p as i32);
    match p % 4 {
        0 => Complex64::new(mag, 0.0),
        1 => Complex64::new(0.0, mag),
        2 => Complex64::new(-mag, 0.0),
        _ => Complex64::new(0.0, -mag),
    }
}

/// Checks every component against every pure-axis derivative of total order `order`.
pub fn max_norm_bound_check(u: &SpectralVectorField, order: u32) -> Vec<MaxNormCheck> {
    let lat = u.lattice();
    let dim = lat.dim();
    let mut arrays = Vec::with_capacity(dim * dim);
    let mut labels = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for axis in 0..dim {
            let d: Vec<Complex64> = u
                .component(i)
                .iter()
                .enumerate()
                .map(|(idx, z)| {
                    let k = if order % 2 == 1 { lat.k_odd(idx) } else { lat.k_of(idx) };
                    z * ik_pow(k[axis], order)
                })
                .collect();
            arrays.push(d);
            labels.push((i, axis));
        }
    }
    let refs: Vec<&[Complex64]> = arrays.iter().map(|a| a.as_slice()).collect();
    let phys = transform::inverse_real(lat, &refs);
    labels
        .into_iter()
        .zip(phys)
        .map(|((i, axis), values)| MaxNormCheck {
            component: i,
            axis,
            order,
            lhs: values.iter().fold(0.0, |m, x| m.max(x.abs())),
            rhs: moment_norm(u, i, order as f64),
        })
        .collect()
}
