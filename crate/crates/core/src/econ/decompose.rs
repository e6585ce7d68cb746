//! Classical additive decomposition: centered-moving-average trend,
//! period-indexed seasonal means, remainder residual.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub trend: TimeSeries,
    pub seasonal: TimeSeries,
    pub residual: TimeSeries,
    pub period: usize,
}

/// Decompose `s` into trend + seasonal + residual with seasonal period
/// `period`. The trend is undefined in the first and last half-window;
/// the seasonal component is re-centered to sum to zero over a full period
/// and the residual is the exact remainder, so the reconstruction identity
/// holds wherever all three components are defined.
pub fn additive_decompose(s: &TimeSeries, period: usize) -> Result<DecompositionResult> {
    if period < 2 {
        return Err(Error::InvalidArgument(
            "decomposition period must be >= 2".into(),
        ));
    }
    if s.missing().iter().any(|&m| m) {
        return Err(Error::InvalidArgument(format!(
            "series '{}' has missing values",
            s.name
        )));
    }
    let n = s.len();
    if n < 2 * period {
        return Err(Error::SeriesTooShort {
            name: s.name.clone(),
            needed: 2 * period,
            have: n,
        });
    }
    let y = s.values();

    // centered moving average; even periods use the 2 x period filter with
    // half weights at the ends
    let half = period / 2;
    let mut trend = vec![0.0; n];
    let mut trend_missing = vec![true; n];
    if period % 2 == 1 {
        for i in half..n - half {
            trend[i] = y[i - half..=i + half].iter().sum::<f64>() / period as f64;
            trend_missing[i] = false;
        }
    } else {
        for i in half..n - half {
            let mut acc = 0.5 * y[i - half] + 0.5 * y[i + half];
            acc += y[i - half + 1..i + half].iter().sum::<f64>();
            trend[i] = acc / period as f64;
            trend_missing[i] = false;
        }
    }

    // seasonal indices from the detrended interior
    let mut sums = vec![0.0; period];
    let mut counts = vec![0usize; period];
    for i in 0..n {
        if !trend_missing[i] {
            sums[i % period] += y[i] - trend[i];
            counts[i % period] += 1;
        }
    }
    let mut idx: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
        .collect();
    let mean = idx.iter().sum::<f64>() / period as f64;
    for v in &mut idx {
        *v -= mean;
    }
    let seasonal: Vec<f64> = (0..n).map(|i| idx[i % period]).collect();

    let mut residual = vec![0.0; n];
    let mut resid_missing = vec![true; n];
    for i in 0..n {
        if !trend_missing[i] {
            residual[i] = y[i] - trend[i] - seasonal[i];
            resid_missing[i] = false;
        }
    }

    Ok(DecompositionResult {
        trend: TimeSeries::new(format!("{}_trend", s.name), s.start, trend, trend_missing)?,
        seasonal: TimeSeries::new(
            format!("{}_seasonal", s.name),
            s.start,
            seasonal,
            vec![false; n],
        )?,
        residual: TimeSeries::new(
            format!("{}_residual", s.name),
            s.start,
            residual,
            resid_missing,
        )?,
        period,
    })
}
