use num_complex::Complex64;

use crate::spectral::{
    dealias_in_place, dealias_scalar_in_place, leray_project_in_place, spectral_derivative,
    transform, SpectralScalar, SpectralVectorField, WavenumberLattice,
};

/// Deliberate defects injected into the dynamics, used by the verification
/// suite to show that its properties actually catch broken solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Dissipation pumps energy in instead of removing it.
    FlipDissipationSign,
    /// Skip the 2/3-rule truncation of the nonlinear term.
    DisableDealiasing,
}

/// `ν|k|^{2α}` per mode, zero at `k = 0`.
pub fn dissipation_symbol(lattice: &WavenumberLattice, alpha: f64, nu: f64) -> Vec<f64> {
    lattice
        .kmod2_slice()
        .iter()
        .map(|&k2| if k2 == 0.0 { 0.0 } else { nu * k2.powf(alpha) })
        .collect()
}

/// `Σ_j u_j ∂_j u_i` on the grid, transformed back (not yet truncated or projected).
fn convective_term(u: &SpectralVectorField) -> SpectralVectorField {
    let lat = u.lattice();
    let dim = lat.dim();

    let mut arrays: Vec<Vec<Complex64>> = u.components().to_vec();
    for i in 0..dim {
        for j in 0..dim {
            arrays.push(spectral_derivative(u, i, j).into_coeffs());
        }
    }
    let refs: Vec<&[Complex64]> = arrays.iter().map(|a| a.as_slice()).collect();
    let phys = transform::inverse_real(lat, &refs);
    let (vel, grad) = phys.split_at(dim);

    let total = lat.total_modes();
    let mut products = vec![vec![0.0; total]; dim];
    for (i, out) in products.iter_mut().enumerate() {
        for j in 0..dim {
            // grad[i*dim + j] = ∂_j u_i
            let g = &grad[i * dim + j];
            for ((o, &uj), &d) in out.iter_mut().zip(&vel[j]).zip(g) {
                *o += uj * d;
            }
        }
    }
    let refs: Vec<&[f64]> = products.iter().map(|p| p.as_slice()).collect();
    let coeffs = transform::forward_real(lat, &refs);
    SpectralVectorField::from_coeffs(lat, coeffs).expect("same lattice")
}

fn finish_nonlinear(mut n: SpectralVectorField, dealias: bool) -> SpectralVectorField {
    if dealias {
        dealias_in_place(&mut n);
    }
    leray_project_in_place(&mut n);
    for i in 0..n.dim() {
        let c = n.component_mut(i);
        c.iter_mut().for_each(|z| *z = -*z);
        c[0] = Complex64::new(0.0, 0.0);
    }
    n
}

/// `−P[(u·∇)u]`, evaluated pseudo-spectrally and truncated by the 2/3 rule.
pub fn nonlinear_term(u: &SpectralVectorField) -> SpectralVectorField {
    finish_nonlinear(convective_term(u), true)
}

/// Pressure from `−Δp = Tr(∇u)² = Σ_ij (∂_i u_j)(∂_j u_i)`.
///
/// The source is formed on the grid and dealiased, then `p̂(k) = ŝ(k)/|k|²`
/// for `k ≠ 0` and `p̂(0) = 0`.
pub fn compute_pressure(u: &SpectralVectorField) -> SpectralScalar {
    let lat = u.lattice();
    let dim = lat.dim();

    let mut arrays = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            // ∂_i u_j
            arrays.push(spectral_derivative(u, j, i).into_coeffs());
        }
    }
    let refs: Vec<&[Complex64]> = arrays.iter().map(|a| a.as_slice()).collect();
    let grad = transform::inverse_real(lat, &refs);

    let total = lat.total_modes();
    let mut source = vec![0.0; total];
    for i in 0..dim {
        for j in 0..dim {
            let a = &grad[i * dim + j];
            let b = &grad[j * dim + i];
            for ((s, x), y) in source.iter_mut().zip(a).zip(b) {
                *s += x * y;
            }
        }
    }
    let mut p = SpectralScalar::from_physical(lat, &source);
    dealias_scalar_in_place(&mut p);
    let k2 = lat.kmod2_slice();
    for (idx, z) in p.coeffs_mut().iter_mut().enumerate() {
        *z = if idx == 0 { Complex64::new(0.0, 0.0) } else { *z / k2[idx] };
    }
    p
}

/// The assembled semi-discrete system `∂_t û = −P[(u·∇)u]^ − ν|k|^{2α} û`.
#[derive(Clone, Debug)]
pub struct Dynamics {
    lattice: WavenumberLattice,
    alpha: f64,
    nu: f64,
    symbol: Vec<f64>,
    nonlinear: bool,
    fault: Fault,
}

impl Dynamics {
    /// `nu = 0` gives the Euler equations.
    pub fn new(lattice: &WavenumberLattice, alpha: f64, nu: f64) -> Self {
        Self {
            lattice: lattice.clone(),
            alpha,
            nu,
            symbol: dissipation_symbol(lattice, alpha, nu),
            nonlinear: true,
            fault: Fault::None,
        }
    }

    /// Turns the advection term off, leaving pure linear decay.
    pub fn without_nonlinearity(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = fault;
        if fault == Fault::FlipDissipationSign {
            self.symbol.iter_mut().for_each(|s| *s = -*s);
        }
        self
    }

    pub fn lattice(&self) -> &WavenumberLattice {
        &self.lattice
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn fault(&self) -> Fault {
        self.fault
    }

    /// Linear damping rate per mode, as used by the integrating factor.
    pub fn symbol(&self) -> &[f64] {
        &self.symbol
    }

    pub fn has_nonlinearity(&self) -> bool {
        self.nonlinear
    }

    /// The nonlinear part of the right-hand side.
    pub fn nonlinear_term(&self, u: &SpectralVectorField) -> SpectralVectorField {
        if !self.nonlinear {
            return SpectralVectorField::zeros(u.lattice());
        }
        finish_nonlinear(convective_term(u), self.fault != Fault::DisableDealiasing)
    }

    pub(crate) fn dealiases(&self) -> bool {
        self.fault != Fault::DisableDealiasing
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::taylor_green;
    use crate::spectral::{leray_project, PhysicalVectorField};

    #[test]
    fn symbol_values() {
        let lat = WavenumberLattice::new(2, 8).unwrap();
        let s = dissipation_symbol(&lat, 1.0, 1.0);
        assert_eq!(s[lat.index_of(&[1, 1]).unwrap()], 2.0);
        assert_eq!(s[0], 0.0);
        let s = dissipation_symbol(&lat, 1.25, 3.0);
        let v = s[lat.index_of(&[1, -1]).unwrap()];
        assert!((v - 3.0 * 2.378_414_230_005_442).abs() < 1e-14);
        assert_eq!(dissipation_symbol(&lat, 0.0, 1.0)[0], 0.0);
    }

    #[test]
    fn zero_field_has_zero_nonlinearity() {
        let lat = WavenumberLattice::new(3, 8).unwrap();
        let n = nonlinear_term(&SpectralVectorField::zeros(&lat));
        assert_eq!(n.max_amplitude(), 0.0);
    }

    #[test]
    fn taylor_green_nonlinearity_is_a_gradient() {
        // (u·∇)u = ½(sin 2x, sin 2y) = −∇(cos 2x + cos 2y)/4 for 2D TG.
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let u = taylor_green(&lat, 1.0);
        let raw = convective_term(&u);
        let expect = PhysicalVectorField::from_fn(&lat, |x| {
            [0.5 * (2.0 * x[0]).sin(), 0.5 * (2.0 * x[1]).sin(), 0.0]
        })
        .to_spectral();
        assert!(raw.relative_distance(&expect).unwrap() < 1e-14);
        assert!(leray_project(&raw).max_amplitude() < 1e-16);
        assert!(nonlinear_term(&u).max_amplitude() < 1e-16);
    }

    /// Brute-force convolution oracle: `Σ_j Σ_{p+q=k} û_j(p) (i q_j) û_i(q)`.
    fn convolution_oracle(u: &SpectralVectorField) -> SpectralVectorField {
        let lat = u.lattice();
        let dim = lat.dim();
        let support: Vec<usize> = (0..lat.total_modes())
            .filter(|&i| u.at(i).iter().any(|z| z.norm() > 0.0))
            .collect();
        let mut out = SpectralVectorField::zeros(lat);
        for &p in &support {
            for &q in &support {
                let kp = lat.k_of(p);
                let kq = lat.k_of(q);
                let sum: Vec<i64> = (0..dim).map(|a| kp[a] + kq[a]).collect();
                let Some(target) = lat.index_of(&sum) else { continue };
                for i in 0..dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..dim {
                        acc += u.component(j)[p]
                            * Complex64::new(0.0, kq[j] as f64)
                            * u.component(i)[q];
                    }
                    out.component_mut(i)[target] += acc;
                }
            }
        }
        dealias_in_place(&mut out);
        let mut projected = leray_project(&out);
        for i in 0..dim {
            projected.component_mut(i).iter_mut().for_each(|z| *z = -*z);
            projected.component_mut(i)[0] = Complex64::new(0.0, 0.0);
        }
        projected
    }

    #[test]
    fn single_mode_convolution_support() {
        // One wavevector k plus its conjugate: products live at 0 and ±2k only.
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let mut u = SpectralVectorField::zeros(&lat);
        let k = lat.index_of(&[1, 2]).unwrap();
        let a = Complex64::new(0.3, -0.4);
        // Deliberately not divergence-free: a solenoidal plane wave does not
        // interact with itself, and we want a nonzero product at 2k.
        let amp = [a * 2.0, a * -1.0 + Complex64::new(0.1, 0.05)];
        u.set(k, &amp);
        u.set(lat.negated(k), &[amp[0].conj(), amp[1].conj()]);

        let fast = nonlinear_term(&u);
        let oracle = convolution_oracle(&u);
        assert!(oracle.max_amplitude() > 1e-3);
        assert!(fast.relative_distance(&oracle).unwrap() < 1e-13);
        for idx in 0..lat.total_modes() {
            let kk = lat.k_of(idx);
            let allowed = matches!((kk[0], kk[1]), (0, 0) | (2, 4) | (-2, -4));
            if !allowed {
                assert!(fast.at(idx).iter().all(|z| z.norm() < 1e-15), "{kk:?}");
            }
        }
    }

    #[test]
    fn nonlinear_matches_convolution_on_random_field() {
        use crate::initial::{random_band_limited, InitialConditionSpec};
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let u = random_band_limited(&lat, &InitialConditionSpec::random_band(1.0, 3, 1, 3)).unwrap();
        let fast = nonlinear_term(&u);
        let oracle = convolution_oracle(&u);
        assert!(fast.relative_distance(&oracle).unwrap() < 1e-13);
        assert!(fast.max_divergence() < 1e-13 * fast.max_amplitude().max(1e-300));
    }

    #[test]
    fn taylor_green_pressure() {
        // Tr(∇u)² = cos 2x + cos 2y, so p = (cos 2x + cos 2y)/4.
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let p = compute_pressure(&taylor_green(&lat, 1.0));
        for idx in 0..lat.total_modes() {
            let k = lat.k_of(idx);
            let expect = match (k[0], k[1]) {
                (2, 0) | (-2, 0) | (0, 2) | (0, -2) => 0.125,
                _ => 0.0,
            };
            assert!((p.coeffs()[idx] - Complex64::new(expect, 0.0)).norm() < 1e-15, "{k:?}");
        }
    }

    #[test]
    fn shear_flow_has_no_pressure() {
        let lat = WavenumberLattice::new(2, 16).unwrap();
        let u = PhysicalVectorField::from_fn(&lat, |x| [(2.0 * x[1]).sin() + 0.5 * x[1].cos(), 0.0, 0.0])
            .to_spectral();
        assert!(compute_pressure(&u).squared_norm() < 1e-30);
    }

    #[test]
    fn pressure_solves_poisson_spectrally() {
        use crate::initial::{random_band_limited, InitialConditionSpec};
        let lat = WavenumberLattice::new(3, 16).unwrap();
        let u = random_band_limited(&lat, &InitialConditionSpec::random_band(1.0, 5, 1, 3)).unwrap();
        let p = compute_pressure(&u);
        // Spectral divergence of the (undealiased-then-truncated) convective
        // term must equal |k|² p̂ on every retained mode.
        let conv = convective_term(&u);
        for idx in 1..lat.total_modes() {
            if !lat.dealias_mask(idx) {
                continue;
            }
            let k = lat.k_of(idx);
            let div: Complex64 = (0..3)
                .map(|j| conv.component(j)[idx] * Complex64::new(0.0, k[j] as f64))
                .sum();
            let lap = p.coeffs()[idx] * lat.kmod2(idx);
            assert!((div - lap).norm() < 1e-12, "{k:?}");
        }
    }
}
