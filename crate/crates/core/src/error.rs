use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sieve limit {limit} exceeds the configured cap of {cap}")]
    ResourceLimit { limit: u64, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncated denominator series vanishes at z = {z}, t_max = {t_max}")]
    Singularity { z: u64, t_max: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("x = {x}: {source}")]
    AtX {
        x: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 2,
            Error::AtX { source, .. } => source.exit_code(),
            _ => 1,
        }
    }

    pub(crate) fn at_x(self, x: u64) -> Self {
        Error::AtX {
            x,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
