//! Threshold calibration: map an unemployment-rate / inflation-rate
//! threshold pair onto equivalent employment-to-population and wage-growth
//! thresholds, via difference and (cointegration-gated) level regressions.

use serde::Serialize;

use crate::econ::{johansen_test, ols, RegressionResult};
use crate::error::{Error, Result};
use crate::series::{align, Panel, TimeSeries};

/// How a threshold estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMethod {
    /// Difference regression rearranged around the reference thresholds;
    /// yields one implied threshold per observation.
    DifferenceRegression,
    /// Level regression evaluated at the reference threshold; valid only
    /// when the pair is cointegrated.
    LevelRegression,
}

/// Implied-threshold distribution plus summary statistics.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdEstimate {
    pub per_obs_thresholds: Vec<f64>,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub max: f64,
    /// Single-value estimate from the level regression when available.
    pub point_estimate: Option<f64>,
    pub method: ThresholdMethod,
    /// The regression behind the estimate.
    pub regression: RegressionResult,
}

/// Percentile with linear interpolation between order statistics.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

fn summarize(
    per_obs: Vec<f64>,
    point: Option<f64>,
    method: ThresholdMethod,
    regression: RegressionResult,
) -> ThresholdEstimate {
    let n = per_obs.len() as f64;
    let mean = per_obs.iter().sum::<f64>() / n;
    let sd = (per_obs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let mut sorted = per_obs.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ThresholdEstimate {
        mean,
        sd,
        min: sorted[0],
        p25: percentile(&sorted, 0.25),
        p50: percentile(&sorted, 0.50),
        p75: percentile(&sorted, 0.75),
        max: *sorted.last().unwrap(),
        per_obs_thresholds: per_obs,
        point_estimate: point,
        method,
        regression,
    }
}

/// Difference-method calibration shared by the epop and wage variants:
/// fit d(target) = a + b * d(reference), then for each observation t
/// compute target_t - a - b * (reference_t - reference_thresh).
fn difference_threshold(
    target: &TimeSeries,
    reference: &TimeSeries,
    reference_thresh: f64,
    min_obs: usize,
) -> Result<ThresholdEstimate> {
    let panel = align(&[target.clone(), reference.clone()])?;
    let rows = panel.complete_rows();
    if rows.len() < min_obs {
        return Err(Error::SeriesTooShort {
            name: target.name.clone(),
            needed: min_obs,
            have: rows.len(),
        });
    }
    let dt = panel.columns()[0].diff(1)?;
    let dr = panel.columns()[1].diff(1)?;
    let reg = ols(&dt, &align(&[dr])?, true)?;
    let a = reg.coefficients[0];
    let b = reg.coefficients[1];

    let per_obs: Vec<f64> = rows
        .iter()
        .map(|&i| {
            let t = panel.columns()[0].values()[i];
            let r = panel.columns()[1].values()[i];
            implied_threshold(a, b, t, r, reference_thresh)
        })
        .collect();
    Ok(summarize(
        per_obs,
        None,
        ThresholdMethod::DifferenceRegression,
        reg,
    ))
}

/// One implied threshold from difference-regression coefficients:
/// target_thresh = target - a - b * (reference - reference_thresh).
pub fn implied_threshold(a: f64, b: f64, target: f64, reference: f64, reference_thresh: f64) -> f64 {
    target - a - b * (reference - reference_thresh)
}

/// Employment-to-population threshold equivalent to `unrate_thresh`,
/// difference method.
pub fn calibrate_epop_threshold(
    epop: &TimeSeries,
    unrate: &TimeSeries,
    unrate_thresh: f64,
) -> Result<ThresholdEstimate> {
    difference_threshold(epop, unrate, unrate_thresh, 30)
}

/// Employment-to-population threshold, level method. Refused with
/// [`Error::NotCointegrated`] unless the Johansen trace test finds at least
/// one cointegrating relation, since a level regression on independent
/// stochastic trends would be spurious.
pub fn calibrate_epop_threshold_level(
    epop: &TimeSeries,
    unrate: &TimeSeries,
    unrate_thresh: f64,
) -> Result<ThresholdEstimate> {
    let panel = align(&[epop.clone(), unrate.clone()])?;
    let joh = johansen_test(&panel, 2)?;
    if joh.inferred_rank == 0 {
        return Err(Error::NotCointegrated);
    }
    let reg = ols(
        &panel.columns()[0],
        &align(&[panel.columns()[1].clone()])?,
        true,
    )?;
    let point = reg.coefficients[0] + reg.coefficients[1] * unrate_thresh;
    let per_obs = vec![point];
    Ok(summarize(
        per_obs,
        Some(point),
        ThresholdMethod::LevelRegression,
        reg,
    ))
}

/// Wage-growth threshold equivalent to `pce_thresh`, difference method.
/// The level method is not offered for this pair: the wage and price series
/// are not cointegrated, so only the difference regression is meaningful.
pub fn calibrate_wage_threshold(
    eciwg: &TimeSeries,
    pce: &TimeSeries,
    pce_thresh: f64,
) -> Result<ThresholdEstimate> {
    difference_threshold(eciwg, pce, pce_thresh, 30)
}

/// The two reduced-form Phillips-curve fits: price inflation and wage growth
/// each regressed on the unemployment gap.
pub struct PhillipsRegressions {
    pub price: RegressionResult,
    pub wage: RegressionResult,
}

pub fn phillips_regressions(
    pce: &TimeSeries,
    eciwg: &TimeSeries,
    unrate_gap: &TimeSeries,
) -> Result<PhillipsRegressions> {
    let gap_panel = |target: &TimeSeries| -> Result<(TimeSeries, Panel)> {
        let joint = align(&[target.clone(), unrate_gap.clone()])?;
        Ok((
            joint.columns()[0].clone(),
            align(&[joint.columns()[1].clone()])?,
        ))
    };
    let (y1, x1) = gap_panel(pce)?;
    let (y2, x2) = gap_panel(eciwg)?;
    Ok(PhillipsRegressions {
        price: ols(&y1, &x1, true)?,
        wage: ols(&y2, &x2, true)?,
    })
}

/// Wage-to-price pass-through: OLS of price inflation on wage growth.
pub fn wage_passthrough_regression(
    pce: &TimeSeries,
    eciwg: &TimeSeries,
) -> Result<RegressionResult> {
    let joint = align(&[pce.clone(), eciwg.clone()])?;
    ols(
        &joint.columns()[0],
        &align(&[joint.columns()[1].clone()])?,
        true,
    )
}
