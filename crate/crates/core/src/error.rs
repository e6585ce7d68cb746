//! Crate-wide error type.

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("config error: {0}")]
    Config(String),

    #[error("bad date '{0}': expected YYYY-MM or YYYYQn")]
    BadDate(String),

    #[error("duplicate date {0} in input")]
    DuplicateDate(String),

    #[error("column '{0}' not found")]
    MissingColumn(String),

    #[error("no numeric data column in input")]
    NoNumericColumn,

    #[error("cell '{value}' in column '{column}' is not numeric")]
    BadCell { column: String, value: String },

    #[error("mixed frequencies: {0}")]
    MixedFrequencies(String),

    #[error("series '{name}' too short: need {needed} observations, have {have}")]
    SeriesTooShort {
        name: String,
        needed: usize,
        have: usize,
    },

    #[error("empty intersection of date ranges")]
    EmptyIntersection,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero denominator at index {0} in percent change")]
    ZeroDenominator(usize),

    #[error("design matrix is rank deficient (column {0})")]
    RankDeficient(usize),

    #[error("insufficient observations: {n_obs} rows for {n_params} parameters")]
    InsufficientObservations { n_obs: usize, n_params: usize },

    #[error("series is constant; statistic undefined")]
    ConstantSeries,

    #[error("covariance matrix is singular")]
    SingularCovariance,

    #[error("series are not cointegrated; level regression would be spurious")]
    NotCointegrated,

    #[error("model parameters violate {0}")]
    BadParams(String),

    #[error("unstable parameter set: closed-loop spectral radius {0:.4} >= 1")]
    Unstable(f64),

    #[error("insufficient expectation history: need {needed} lags, have {have}")]
    InsufficientHistory { needed: usize, have: usize },

    #[error("search space too large: {0} candidate paths exceeds limit")]
    SearchSpaceTooLarge(f64),

    #[error("solver failed to converge after {iterations} iterations (best loss {best_loss:.6e})")]
    NonConvergence { iterations: usize, best_loss: f64 },

    #[error("invalid scenario '{name}': {reason}")]
    InvalidScenario { name: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 config/validation, 3 numerical, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Io(_) | Csv(_) => 4,
            Unstable(_) | NonConvergence { .. } | SingularCovariance | RankDeficient(_)
            | NotCointegrated | ZeroDenominator(_) | ConstantSeries => 3,
            _ => 2,
        }
    }
}
