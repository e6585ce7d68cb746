//! Threshold-based forward-guidance simulator.
//!
//! The crate has three layers:
//!
//! 1. **Data and econometrics** ([`series`], [`econ`], [`calibrate`]):
//!    load and transform time series, run OLS with diagnostics, unit-root
//!    and cointegration tests, and calibrate employment-to-population and
//!    wage-growth liftoff thresholds equivalent to a given unemployment /
//!    inflation threshold pair.
//! 2. **Model and policy** ([`model`], [`policy`], [`oc`]): a small
//!    quarterly macro model driven by demand, supply, and monetary shocks;
//!    Taylor-rule variants behind an effective lower bound with
//!    threshold-gated liftoff; and a quadratic-loss optimal-control rate
//!    solver with a brute-force oracle.
//! 3. **Scenarios** ([`scenario`], [`emit`]): TOML-defined scenario runs,
//!    multi-variant comparisons against a consensus baseline, and CSV/SVG
//!    emission.

pub mod calibrate;
pub mod econ;
pub mod emit;
pub mod error;
pub mod model;
pub mod oc;
pub mod policy;
pub mod scenario;
pub mod series;

pub use error::{Error, Result};
