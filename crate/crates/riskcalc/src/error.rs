//! Crate-wide error type. Every fallible operation returns [`Result`];
//! diagnostics for file-backed data always carry a location (path, line,
//! or entity id).

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} {value} out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("acceptable risk must be in (0, 1], got {0}")]
    InvalidThreshold(f64),

    #[error("curve needs at least 2 points, got {0}")]
    InvalidCount(u64),

    #[error("security is undefined at zero risk")]
    ZeroRisk,

    #[error("currency mismatch: {left} vs {right}")]
    CurrencyMismatch { left: String, right: String },

    #[error("invalid currency code {0:?}: expected 3 ASCII letters")]
    InvalidCurrency(String),

    #[error("equipment cost must be positive")]
    ZeroEquipmentCost,

    #[error("occurrence rate must be non-negative, got {0}")]
    NegativeRate(f64),

    #[error("control {control:?} defines neither post_pvl nor post_aro")]
    MissingPostValues { control: String },

    #[error("control {control:?} worsens {field}: {pre} -> {post}")]
    WorsenedRisk {
        control: String,
        field: &'static str,
        pre: f64,
        post: f64,
    },

    #[error("previous value must be positive to compute a change ratio")]
    ZeroBase,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("cut points must be strictly ascending finite values")]
    InvalidCutPoints,

    #[error("matrix not monotone at frequency {freq}, loss {loss}: raising a class may not turn NT into T")]
    NonMonotoneMatrix { freq: u8, loss: u8 },

    #[error("negative amount {value} at {location}")]
    NegativeValue { value: f64, location: String },

    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    #[error("validation error at {entity}: {detail}")]
    Validation { entity: String, detail: String },

    #[error("unsupported schema version {found} (this build reads version {supported})")]
    UnsupportedVersion { found: u64, supported: u64 },

    #[error("unknown asset id {0:?}")]
    UnknownAsset(String),

    #[error("unknown threat id {0:?}")]
    UnknownThreat(String),

    #[error("asset {0:?} has no equipment cost on record")]
    MissingEquipmentCost(String),

    #[error("format {format:?} is not supported for {report}")]
    UnsupportedFormat {
        report: &'static str,
        format: &'static str,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn validation(entity: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation {
            entity: entity.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(path: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            detail: detail.into(),
        }
    }
}
