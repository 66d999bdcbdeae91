use crate::distance::DistanceKind;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building inputs or running the engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("negative mass {value} at bin {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("mass sums to {sum:e}, expected 1 within 1e-9")]
    NotNormalized { sum: f64 },

    #[error("cannot renormalize: total mass is zero")]
    ZeroTotal,

    #[error("cumulative values decrease at index {index}: {prev:e} -> {next:e}")]
    NonMonotone { index: usize, prev: f64, next: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a valid histogram: {reason}")]
    InvalidHistogram { reason: String },

    #[error("point set is empty")]
    EmptySet,

    #[error("no data point lies within the bandwidth of the seed")]
    EmptyActiveSet,

    #[error("engine requires the {expected:?} distance, config selects {got:?}")]
    DistanceMismatch {
        expected: DistanceKind,
        got: DistanceKind,
    },

    #[error("k = {k} exceeds the number of points ({n})")]
    KTooLarge { k: usize, n: usize },

    #[error("could not draw {k} distinct initial centroids after {attempts} attempts")]
    DegenerateInit { k: usize, attempts: usize },

    #[error("label vectors differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least two points, got {n}")]
    TooFewPoints { n: usize },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("series is empty")]
    EmptySeries,

    #[error("value range is empty")]
    EmptyRange,

    #[error("every seed failed; no mode available for assignment")]
    NoSuccessfulSeeds,
}

impl Error {
    /// Convenience constructor for configuration errors.
    pub fn invalid_config(reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            reason: reason.into(),
        }
    }
}
