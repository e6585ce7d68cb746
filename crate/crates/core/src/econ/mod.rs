//! Statistical kernels: OLS with diagnostics, unit-root and cointegration
//! tests, and classical additive decomposition.

mod adf;
mod decompose;
mod diagnostics;
mod johansen;
mod ols;

pub use adf::{adf_test, default_max_lags, AdfResult, AdfSpec};
pub use decompose::{additive_decompose, DecompositionResult};
pub use diagnostics::{correlation_matrix, harvey_collier, white_test, CorrelationMatrix, TestStat, WhiteResult};
pub use johansen::{johansen_test, JohansenResult};
pub use ols::{ols, ols_raw, RegressionResult};
