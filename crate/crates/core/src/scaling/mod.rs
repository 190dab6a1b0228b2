//! Criticality calculus: `α_L(n)`, solvability margins, the scale symmetry,
//! and Gaussian oracles for the interpolation inequality.

mod exponents;
mod gaussian;
mod transform;

pub use exponents::{
    deserialize_exponent, lions_exponent, parse_rational, rational_to_f64, solvability_margin,
    solvability_margin_f64, Classification, Margin,
};
pub use gaussian::{gaussian_moment, gaussian_moment_quadrature, interpolation_ratio, sphere_area};
pub use transform::{
    apply_discrete_rescale, scaled_energy_ratio, truncate_for_rescale, ScaleTransform,
};
