use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed space: d({from}, {to}) = {value} is not a finite nonnegative number")]
    MalformedSpace { from: String, to: String, value: f64 },

    #[error("malformed space: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("point `{0}` is not in dom f")]
    NotInDomain(String),

    #[error("objective is not proper: f = +inf everywhere")]
    ImproperObjective,

    #[error("operation requires a finite space; got an implicit one")]
    ImplicitSpace,

    #[error("space has {n} points, above the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance hash mismatch: certificate {certificate} vs oracle {oracle}")]
    InstanceMismatch { certificate: String, oracle: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
