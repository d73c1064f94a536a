//! Error type shared across the crate.

use std::path::PathBuf;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input table had no data rows, or no condition features remain
    /// after dropping columns.
    #[error("empty decision table: {0}")]
    EmptyTable(String),

    /// A data row's arity disagrees with the header.
    #[error("ragged row {row}: expected {expected} cells, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    /// A column named on the command line or in a cost file does not exist.
    #[error("unknown column `{name}`")]
    UnknownColumn { name: String },

    /// Two header cells carry the same name, so name-based selection
    /// would be ambiguous.
    #[error("duplicate column `{name}` in header")]
    DuplicateColumn { name: String },

    /// A feature index outside `[0, num_features)`.
    #[error("feature index {index} out of range (the system has {limit} features)")]
    InvalidFeature { index: usize, limit: usize },

    /// A cost schedule whose length disagrees with the decision system.
    #[error("cost schedule has {found} entries but the system has {expected} features")]
    ScheduleMismatch { expected: usize, found: usize },

    /// Negative, NaN, or otherwise unusable cost value.
    #[error("invalid cost {value} for feature `{name}`: costs must be finite and nonnegative")]
    InvalidCost { name: String, value: f64 },

    /// Bad `[low, high]` bounds for cost generation.
    #[error("invalid cost range [{low}, {high}]: low must not exceed high")]
    InvalidCostRange { low: u32, high: u32 },

    /// Budgets must be finite and nonnegative.
    #[error("invalid budget {0}: budgets must be finite and nonnegative")]
    InvalidBudget(f64),

    /// Budget factors must be positive.
    #[error("invalid budget factor {0}: the factor must be positive and finite")]
    InvalidBudgetFactor(f64),

    /// Lambda weights must be non-positive.
    #[error("invalid lambda {0}: weighting exponents must be non-positive")]
    InvalidLambda(f64),

    /// Empty or duplicated lambda grid.
    #[error("invalid lambda grid: {0}")]
    InvalidLambdaGrid(String),

    /// Full enumeration refused on systems too large to enumerate.
    #[error("refusing full enumeration of {count} features (guard limit {limit})")]
    TooManyFeatures { count: usize, limit: usize },

    /// Benchmark configuration problems (zero trials and the like).
    #[error("invalid trial configuration: {0}")]
    InvalidTrialConfig(String),

    /// Aggregation over an empty record list.
    #[error("cannot summarize an empty record list")]
    EmptyRecords,

    #[error("trial {index}: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// An underlying I/O failure, with the path that triggered it. The
    /// cause is reachable through `source()` rather than repeated in
    /// the message, so chain-printing reporters do not show it twice.
    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed delimited text (quoting errors and the like).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors rooted in the file system rather than in the data
    /// or the arguments. The CLI maps these to a dedicated exit code.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
