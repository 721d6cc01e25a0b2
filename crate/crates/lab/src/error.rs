use thiserror::Error;

/// Everything that stops a run before a check verdict exists. All of these
/// map to exit status 2.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid config at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("precondition failed: {0}")]
    Precondition(#[from] photonfield_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("scenario has no `{0}` section, which this command requires")]
    MissingSection(&'static str),

    #[error("unknown operator name {0:?}; see `dump-operator --help` for the accepted names")]
    UnknownOperator(String),

    #[error("--tolerance-scale must be finite and non-negative, got {0}")]
    ToleranceScale(f64),
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
