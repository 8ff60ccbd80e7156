//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::kernels::KernelKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("unparseable date or period value {value:?}")]
    InvalidDate { value: String },

    #[error("bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),

    #[error("training period {origin} is newer than target period {target}")]
    OriginAfterTarget { origin: f64, target: f64 },

    #[error("lag must be nonnegative and finite, got {0}")]
    InvalidLag(f64),

    #[error("lag {lag} is outside the support of the {kind} kernel (must be < 1)")]
    OutOfSupport { kind: KernelKind, lag: f64 },

    #[error("bandwidth {bandwidth} below support minimum for the {kind} kernel: it must exceed the largest elapsed time {max_elapsed}")]
    BandwidthBelowSupport {
        kind: KernelKind,
        bandwidth: f64,
        max_elapsed: f64,
    },

    #[error("invalid bandwidth grid: {0}")]
    InvalidGrid(String),

    #[error("empty bandwidth grid: minimum admissible bandwidth {min} exceeds upper bound {hi}")]
    EmptyGrid { min: f64, hi: f64 },

    #[error("weight {value} at position {index} is not in (0, 1]")]
    InvalidWeight { index: usize, value: f64 },

    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("sample size {0} exceeds the supported maximum of 5000")]
    SampleTooLarge(usize),

    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error(
        "record {record}: column {column:?} has nonpositive value {value} under log transform"
    )]
    NonPositiveLog {
        record: String,
        column: String,
        value: f64,
    },

    #[error("record {record}: missing value for column {column:?}")]
    MissingValue { record: String, column: String },

    #[error("record {record}: column {column:?} value {value:?} is not numeric")]
    TypeMismatch {
        record: String,
        column: String,
        value: String,
    },

    #[error("column {column:?}: level {level:?} was not seen in the training data")]
    UnseenLevel { column: String, level: String },

    #[error("column {column:?}: reference level {level:?} is absent from the data")]
    MissingReferenceLevel { column: String, level: String },

    #[error("singular design: column {column:?} is linearly dependent on the others")]
    SingularDesign { column: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("design column labels do not match the fitted model")]
    LabelMismatch,

    #[error("missing column {0:?}")]
    MissingColumn(String),

    #[error("duplicate project id {0:?}")]
    DuplicateId(String),

    #[error("expected {expected} rows after filtering, found {found}")]
    RowCountMismatch { expected: usize, found: usize },

    #[error("unknown descriptor {0:?}")]
    UnknownDescriptor(String),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("no well-formed split: {0}")]
    NoWellFormedSplit(String),

    #[error("invalid override: {0}")]
    InvalidOverride(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("effort multiplier {name} must be positive, got {value}")]
    NonPositiveMultiplier { name: String, value: f64 },

    #[error("KLOC must be positive, got {0}")]
    NonPositiveSize(f64),

    #[error("cell (split {split}, {kernel}, bandwidth {bandwidth}) failed: {source}")]
    CellFailed {
        split: usize,
        kernel: KernelKind,
        bandwidth: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("no curves for split {split} and kernel {kernel}")]
    MissingSlice { split: usize, kernel: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad inputs (data, descriptors, configs) rather
    /// than by a numerical failure during fitting.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SingularDesign { .. }
                | Error::CellFailed { .. }
                | Error::ZeroVariance(_)
                | Error::TooFewObservations { .. }
                | Error::NonFinite(_)
        )
    }
}
