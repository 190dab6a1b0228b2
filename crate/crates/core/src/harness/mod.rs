//! Configuration files, persisted runs, sweeps, scale checks and the
//! verification suite.

mod config;
mod run;
mod scale_check;
mod sweep;
pub mod verify;

pub use config::{OutputConfig, RunConfig, SCHEMA_VERSION};
pub use run::{
    default_plan, run_config, run_experiment, simulate, simulate_field, simulate_with_plan,
    write_outputs, FinalSummary, RunRecord, RunStatus, Simulation,
};
pub use scale_check::{scale_check, ScaleReport, COMMUTATION_TOLERANCE, ENERGY_RATIO_TOLERANCE};
pub use sweep::{sweep, validate_alphas, SweepRow, SweepSummary};
pub use verify::{verify, verify_with_fault, PropertyResult, VerifyReport};
