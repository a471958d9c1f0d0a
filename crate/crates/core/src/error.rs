use std::path::PathBuf;

use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("sign sequence must not be empty")]
    EmptySignSeq,

    #[error("invalid sign token `{token}` (expected 1 or -1)")]
    InvalidSignToken { token: String },

    #[error("invalid coefficient token `{token}`")]
    InvalidCoeffToken { token: String },

    #[error("{context}: polynomial degree must be at least {min}")]
    DegreeTooSmall { context: &'static str, min: usize },

    #[error("{context}: polynomial must be monic")]
    NotMonic { context: &'static str },

    #[error("tolerance must be positive and finite")]
    BadTolerance,

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error(
        "root finding for shift {shift} did not certify: worst residual {worst:.3e} \
         exceeds {allowed:.3e} after {sweeps} sweeps"
    )]
    RootsNotCertified {
        shift: C64,
        worst: f64,
        allowed: f64,
        sweeps: usize,
    },

    #[error("period `{seq}` is odd (entry product -1); double it or pick an even period")]
    OddPeriod { seq: String },

    #[error(
        "period of length {len} does not close under the block recurrence; \
         double the period of b"
    )]
    PeriodNotClosed { len: usize },

    #[error("sequence `{seq}` does not end in (-1, 1)")]
    BadSymmetryTail { seq: String },

    #[error("truncation half-width {got} too small, need at least {needed}")]
    TruncationTooSmall { needed: i64, got: i64 },

    #[error("window extents and resolution must be positive and finite")]
    BadWindow,

    #[error("max degree must be at least {min}, got {got}")]
    BadMaxDegree { min: usize, got: usize },

    #[error("failed to write {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to encode image {path}")]
    ImageEncode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}
