//! Real ↔ spectral transforms on the full complex spectrum.
//!
//! Coefficients are Fourier-series coefficients, `f(x) = Σ_k c(k) e^{i k·x}`,
//! so the forward transform carries the `1/N^n` factor and the inverse is a
//! plain sum. Real fields are transformed two at a time by packing them as
//! the real and imaginary parts of one complex array.

use num_complex::Complex64;
use rustfft::Fft;

use super::lattice::WavenumberLattice;

/// In-place n-dimensional FFT of a flat row-major buffer.
fn fft_nd(buf: &mut [Complex64], lattice: &WavenumberLattice, plan: &dyn Fft<f64>) {
    let n = lattice.resolution();
    let dim = lattice.dim();
    let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];

    // Last axis is contiguous: rustfft processes every length-N chunk.
    plan.process_with_scratch(buf, &mut scratch);

    let mut lines = Vec::new();
    for axis in (0..dim - 1).rev() {
        let stride = n.pow((dim - 1 - axis) as u32);
        let block = stride * n;
        lines.resize(block, Complex64::new(0.0, 0.0));
        for chunk in buf.chunks_exact_mut(block) {
            for o in 0..stride {
                for j in 0..n {
                    lines[o * n + j] = chunk[j * stride + o];
                }
            }
            plan.process_with_scratch(&mut lines, &mut scratch);
            for o in 0..stride {
                for j in 0..n {
                    chunk[j * stride + o] = lines[o * n + j];
                }
            }
        }
    }
}

/// Forward transform of real arrays into Fourier-series coefficients.
pub fn forward_real(lattice: &WavenumberLattice, inputs: &[&[f64]]) -> Vec<Vec<Complex64>> {
    let total = lattice.total_modes();
    let norm = 1.0 / total as f64;
    let mut out = Vec::with_capacity(inputs.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); total];

    for pair in inputs.chunks(2) {
        let a = pair[0];
        assert_eq!(a.len(), total);
        match pair.get(1) {
            Some(b) => {
                assert_eq!(b.len(), total);
                for ((z, &x), &y) in buf.iter_mut().zip(a.iter()).zip(b.iter()) {
                    *z = Complex64::new(x, y);
                }
            }
            None => {
                for (z, &x) in buf.iter_mut().zip(a.iter()) {
                    *z = Complex64::new(x, 0.0);
                }
            }
        }
        fft_nd(&mut buf, lattice, lattice.forward_plan().as_ref());

        // Z = A + iB with A, B Hermitian: A(k) = (Z(k) + Z*(−k))/2,
        // B(k) = (Z(k) − Z*(−k))/(2i). The split also makes A exactly
        // Hermitian when B is absent.
        let mut first = vec![Complex64::new(0.0, 0.0); total];
        let mut second = vec![Complex64::new(0.0, 0.0); total];
        for idx in 0..total {
            let z = buf[idx];
            let zc = buf[lattice.negated(idx)].conj();
            first[idx] = (z + zc) * (0.5 * norm);
            let d = (z - zc) * (0.5 * norm);
            second[idx] = Complex64::new(d.im, -d.re);
        }
        out.push(first);
        if pair.len() == 2 {
            out.push(second);
        }
    }
    out
}

/// Inverse transform of (Hermitian) coefficient arrays to real grid values.
pub fn inverse_real(lattice: &WavenumberLattice, inputs: &[&[Complex64]]) -> Vec<Vec<f64>> {
    let total = lattice.total_modes();
    let mut out = Vec::with_capacity(inputs.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); total];
    let i = Complex64::new(0.0, 1.0);

    for pair in inputs.chunks(2) {
        let a = pair[0];
        assert_eq!(a.len(), total);
        match pair.get(1) {
            Some(b) => {
                assert_eq!(b.len(), total);
                for ((z, &x), &y) in buf.iter_mut().zip(a.iter()).zip(b.iter()) {
                    *z = x + i * y;
                }
            }
            None => buf.copy_from_slice(a),
        }
        fft_nd(&mut buf, lattice, lattice.inverse_plan().as_ref());
        out.push(buf.iter().map(|z| z.re).collect());
        if pair.len() == 2 {
            out.push(buf.iter().map(|z| z.im).collect());
        }
    }
    out
}

/// Plain complex inverse transform, used where the input may not be Hermitian.
pub fn inverse_complex(lattice: &WavenumberLattice, coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    fft_nd(&mut buf, lattice, lattice.inverse_plan().as_ref());
    buf
}
