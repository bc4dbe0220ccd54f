use thiserror::Error;

/// Failures of the numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("{0}: input is not finite")]
    NonFinite(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is not conjugate-symmetric")]
    NotHermitian,
    #[error("matrix is not PSD (pivot {pivot} = {value:e})")]
    NotPsd { pivot: usize, value: f64 },
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

/// Errors raised by the simulator modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("combiner column for device {device} is all-zero")]
    ZeroCombiner { device: usize },
    #[error("no delivered packets")]
    NoDeliveries,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("drop {drop_index}: {source}")]
    Drop {
        drop_index: u64,
        #[source]
        source: Box<SimError>,
    },
}

impl SimError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        SimError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
