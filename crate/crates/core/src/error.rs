use thiserror::Error;

/// Errors produced by the simulator layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported cell count {0} (only 1 and 7 are implemented)")]
    UnsupportedCellCount(usize),

    #[error("invalid distance bounds: {0}")]
    InvalidDistanceBounds(String),

    #[error("zero distance between transmitter and receiver")]
    ZeroDistance,

    #[error("path-loss exponent {0} must exceed 2 for the closed-form expectation")]
    AlphaOutOfRange(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown configuration key `{0}`")]
    UnknownConfigKey(String),

    #[error("unknown sweep axis `{0}` (expected delta_db, gamma_d_db, p_r_d or d2d_max)")]
    UnknownAxis(String),

    #[error("oac enabled with {pairs} pairs, above the max-pairs guard {guard}")]
    OacGuard { pairs: usize, guard: usize },

    #[error("empty sample set")]
    EmptySamples,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
