use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("unsupported homology dimension {0} (max supported is 1)")]
    UnsupportedDimension(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("series of length {len} too short; need at least {required}")]
    SeriesTooShort { len: usize, required: usize },
    #[error("edge ({0}, {1}) references a missing vertex")]
    MissingVertex(usize, usize),
    #[error("essential points included with mismatched caps {0} and {1}")]
    CapMismatch(f64, f64),
    #[error("brute-force oracle limited to {limit} points, got {got}")]
    OracleTooLarge { got: usize, limit: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("geodesic distance needs equal subspace dimensions ({0} vs {1}); use chordal_distance")]
    UnequalSubspaceDims(usize, usize),
    #[error("requested subspace dimension {requested} exceeds achievable rank {rank}")]
    RankDeficient { requested: usize, rank: usize },
    #[error("metric {metric} cannot be applied to {feature} features")]
    MetricMismatch {
        metric: &'static str,
        feature: &'static str,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::Invalid(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
