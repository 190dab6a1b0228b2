use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),

    #[error("invalid resolution {0}: must be even and within 8..=512")]
    InvalidResolution(usize),

    #[error("fields live on different lattices")]
    ShapeMismatch,

    /// A non-finite coefficient appeared while stepping.
    #[error("solution diverged at t = {t} (step {step})")]
    Diverged { t: f64, step: u64 },

    #[error("rescale by q = {q} pushes mode {max_mode} past the dealiasing limit {limit}")]
    RescaleOverflow { q: u32, max_mode: i64, limit: f64 },

    #[error("scale transform undefined for alpha = {alpha} (needs alpha > 1/2)")]
    DegenerateScaling { alpha: f64 },

    #[error("no modes in shell band [{k_min}, {k_max}]")]
    EmptyBand { k_min: u32, k_max: u32 },

    #[error("need at least {needed} diagnostic samples, got {got}")]
    NotEnoughSamples { needed: usize, got: usize },

    #[error("diagnostic record is missing {0}")]
    MissingDiagnostic(String),

    #[error("invalid value for `{field}`: {message}")]
    InvalidConfig { field: String, message: String },

    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("bad checkpoint: {0}")]
    Checkpoint(String),

    /// Results could not be written.
    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the CLI for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Diverged { .. } => 2,
            Error::Output { .. } => 4,
            _ => 1,
        }
    }

    pub(crate) fn output(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Output { path: path.to_path_buf(), source }
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            message: message.into(),
        }
    }
}
