use thiserror::Error;

/// Errors produced by construction and engine preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {0} is outside the unit interval [0, 1]")]
    OutOfUnitRange(f64),

    #[error("unknown operation `{0}`")]
    UnknownOp(String),

    #[error("bad parameters for operation `{name}`: {reason}")]
    BadOpParams { name: String, reason: String },

    #[error("invalid membership function: {0}")]
    InvalidFunction(String),

    #[error("interval endpoints out of order: {0} > {1}")]
    IntervalOrder(f64, f64),

    #[error("combiner `{0}` is not surjective onto [0, 1] on the evaluation grid")]
    NonSurjectiveCombiner(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("grid result left {0} bucket(s) unfilled")]
    UnfilledBuckets(usize),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
