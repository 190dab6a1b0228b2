//! Pseudo-spectral solver and analysis tools for the hyperdissipative
//! Navier–Stokes equations `∂_t u + (u·∇)u + ∇p = −ν(−Δ)^α u` on the periodic torus.

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod initial;
pub mod scaling;
pub mod spectral;

pub use error::{Error, Result};
