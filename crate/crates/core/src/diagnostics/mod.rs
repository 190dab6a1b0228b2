//! Norms, monitors and per-step records.

pub mod csv;
mod max_norm;
mod norms;
mod prop1;
mod record;

pub use max_norm::{max_norm_bound_check, MaxNormCheck, MAX_NORM_SLACK};
pub use norms::{
    dissipation_rate, energy, enstrophy, enstrophy_production, moment_norm, sobolev_norm,
    tail_fraction,
};
pub use prop1::{dissipative_order, prop1_residual, prop1_series, prop1_terms, Prop1Sample, Prop1Terms};
pub use record::{blowup_indicator, DiagnosticsPlan, DiagnosticsRecord, Flags, RESOLUTION_LOSS_THRESHOLD};
