use thiserror::Error;

/// Error vocabulary shared by every module.
///
/// `InvalidArgument` and `Domain` mean the caller broke a precondition and
/// nothing was computed.  `Numeric`, `Range`, and `Exhausted` mean the inputs
/// were legal but the computation could not deliver the promised accuracy or
/// verdict; these are reportable findings, not bugs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("exhausted: {0}")]
    Exhausted(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: validation failures exit 1, numeric
    /// findings (error budget not met, scan exhausted, quadrature stuck) exit 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::Domain(_)
            | Error::Pole(_)
            | Error::Unsupported(_)
            | Error::Config(_) => 1,
            Error::Range(_) | Error::Numeric(_) | Error::Exhausted(_) => 2,
        }
    }
}
