//! Fourier lattice, transforms, and the linear spectral operators.

pub mod checkpoint;
mod field;
mod lattice;
mod ops;
pub mod transform;

pub use field::{PhysicalVectorField, SpectralScalar, SpectralVectorField};
pub use lattice::{WavenumberLattice, MAX_RESOLUTION, MIN_RESOLUTION};
pub use ops::{
    dealias, dealias_in_place, dealias_scalar_in_place, derivative_of, leray_project,
    leray_project_in_place, spectral_derivative, vorticity, Vorticity,
};

/// Builds the lattice for dimension `n` and `N` modes per axis.
pub fn build_lattice(dim: usize, resolution: usize) -> crate::Result<WavenumberLattice> {
    WavenumberLattice::new(dim, resolution)
}
