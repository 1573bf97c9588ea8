use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit reports. Variants are kept distinct so callers
/// (and the CLI's JSON error channel) can tell a bad header from a short file.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] io::Error),

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("label {label} at row {row} is out of range for {class_count} classes")]
    LabelOutOfRange {
        row: usize,
        label: usize,
        class_count: usize,
    },

    #[error("truncated payload: expected {expected} rows, found {found}")]
    TruncatedPayload { expected: usize, found: usize },

    #[error("trailing data after payload ({0} bytes)")]
    TrailingData(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("chunk count {chunks} out of range for {n} samples")]
    ChunksOutOfRange { chunks: usize, n: usize },

    #[error("k = {k} out of range for {n} samples")]
    KOutOfRange { k: usize, n: usize },

    #[error("unknown severity level {0}")]
    UnknownSeverity(u32),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("class {class} has {count} samples; at least 2 are required")]
    DegenerateClass { class: usize, count: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("empty grid")]
    EmptyGrid,

    #[error("ragged corruption grid: {0}")]
    RaggedGrid(String),

    #[error("clean accuracy must be positive (got {0})")]
    ZeroAccuracy(f64),

    #[error("record `{model}` is missing field `{field}`")]
    MissingField { model: String, field: String },

    #[error("at least {required} models are required, got {found}")]
    TooFewModels { required: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short stable identifier, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io(_) => "io",
            Error::MalformedHeader(_) => "malformed_header",
            Error::UnsupportedVersion(_) => "unsupported_version",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NonFinite { .. } => "non_finite",
            Error::LabelOutOfRange { .. } => "label_out_of_range",
            Error::TruncatedPayload { .. } => "truncated_payload",
            Error::TrailingData(_) => "trailing_data",
            Error::Parse { .. } => "parse",
            Error::Invariant(_) => "invariant",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::ChunksOutOfRange { .. } => "chunks_out_of_range",
            Error::KOutOfRange { .. } => "k_out_of_range",
            Error::UnknownSeverity(_) => "unknown_severity",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::DegenerateClass { .. } => "degenerate_class",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::EmptyGrid => "empty_grid",
            Error::RaggedGrid(_) => "ragged_grid",
            Error::ZeroAccuracy(_) => "zero_accuracy",
            Error::MissingField { .. } => "missing_field",
            Error::TooFewModels { .. } => "too_few_models",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Json(_) => "json",
        }
    }
}
