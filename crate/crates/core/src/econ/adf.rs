//! Augmented Dickey-Fuller unit-root test with AIC lag selection and
//! MacKinnon response-surface p-values.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::econ::ols::ols_raw;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdfSpec {
    /// Intercept only (the usual choice for rates and ratios).
    Constant,
    /// Intercept and linear trend.
    ConstantTrend,
    /// No deterministic terms.
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdfResult {
    /// t-statistic on the lagged level.
    pub statistic: f64,
    pub p_value: f64,
    /// Number of lagged differences included (chosen by AIC).
    pub lags: usize,
    pub spec: AdfSpec,
    pub reject_at_5pct: bool,
    pub n_obs: usize,
}

/// Default lag ceiling, the Schwert rule 12 * (n/100)^0.25.
pub fn default_max_lags(n: usize) -> usize {
    (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

/// ADF test. Lag order is chosen by AIC over 0..=max_lags on a common
/// sample, then the regression is refit on the longest sample the chosen
/// lag allows. `max_lags = None` uses the Schwert default.
pub fn adf_test(s: &TimeSeries, max_lags: Option<usize>, spec: AdfSpec) -> Result<AdfResult> {
    if s.missing().iter().any(|&m| m) {
        return Err(Error::InvalidArgument(format!(
            "series '{}' has missing values; ADF needs a gap-free sample",
            s.name
        )));
    }
    let y = s.values();
    let n = y.len();
    let max_lags = max_lags.unwrap_or_else(|| default_max_lags(n));
    // effective sample at the deepest lag must leave >= 20 observations
    if n < max_lags + 22 {
        return Err(Error::SeriesTooShort {
            name: s.name.clone(),
            needed: max_lags + 22,
            have: n,
        });
    }
    let spread = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - y.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread == 0.0 {
        return Err(Error::ConstantSeries);
    }

    let dy: Vec<f64> = (1..n).map(|t| y[t] - y[t - 1]).collect();

    // choose lags on the common sample implied by max_lags
    let mut best = (f64::INFINITY, 0usize);
    for p in 0..=max_lags {
        let fit = fit_adf(y, &dy, p, max_lags, spec)?;
        let n_eff = fit.1 as f64;
        let aic = n_eff * (fit.0 / n_eff).ln() + 2.0 * fit.2 as f64;
        if aic < best.0 - 1e-12 {
            best = (aic, p);
        }
    }
    let lags = best.1;

    // refit at the chosen lag on the full available sample
    let (statistic, n_obs) = fit_adf_stat(y, &dy, lags, lags, spec)?;
    let p_value = mackinnon_p(statistic, spec);
    Ok(AdfResult {
        statistic,
        p_value,
        lags,
        spec,
        reject_at_5pct: p_value < 0.05,
        n_obs,
    })
}

/// Fit the ADF regression trimmed to `trim` lags; returns (rss, n_eff, k).
fn fit_adf(
    y: &[f64],
    dy: &[f64],
    p: usize,
    trim: usize,
    spec: AdfSpec,
) -> Result<(f64, usize, usize)> {
    let (reg, _stat_idx, n_eff) = adf_design_fit(y, dy, p, trim, spec)?;
    Ok((reg.rss, n_eff, reg.k()))
}

fn fit_adf_stat(
    y: &[f64],
    dy: &[f64],
    p: usize,
    trim: usize,
    spec: AdfSpec,
) -> Result<(f64, usize)> {
    let (reg, stat_idx, n_eff) = adf_design_fit(y, dy, p, trim, spec)?;
    Ok((reg.t_stats[stat_idx], n_eff))
}

fn adf_design_fit(
    y: &[f64],
    dy: &[f64],
    p: usize,
    trim: usize,
    spec: AdfSpec,
) -> Result<(crate::econ::RegressionResult, usize, usize)> {
    // dy[t] corresponds to y[t+1] - y[t]; usable targets start at index trim
    let n_eff = dy.len() - trim;
    let target: Vec<f64> = dy[trim..].to_vec();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut names: Vec<String> = Vec::new();

    // lagged level y_{t-1}
    cols.push((trim..dy.len()).map(|t| y[t]).collect());
    names.push("level".into());
    // lagged differences
    for i in 1..=p {
        cols.push((trim..dy.len()).map(|t| dy[t - i]).collect());
        names.push(format!("dlag{i}"));
    }
    if spec == AdfSpec::ConstantTrend {
        cols.push((0..n_eff).map(|t| t as f64).collect());
        names.push("trend".into());
    }
    let refs: Vec<&[f64]> = cols.iter().map(|c| c.as_slice()).collect();
    let intercept = spec != AdfSpec::None;
    let reg = ols_raw(&target, &refs, &names, intercept)?;
    // level coefficient sits right after the intercept when present
    let stat_idx = intercept as usize;
    Ok((reg, stat_idx, n_eff))
}

// MacKinnon (1994) response-surface coefficients for the tau distribution,
// single-series case. p = Phi(c0 + c1*tau + c2*tau^2 [+ c3*tau^3]), with the
// small-p polynomial used left of the split point.
struct Surface {
    tau_min: f64,
    tau_max: f64,
    tau_star: f64,
    small: [f64; 3],
    large: [f64; 4],
}

const SURFACE_NC: Surface = Surface {
    tau_min: -19.04,
    tau_max: f64::INFINITY,
    tau_star: -1.04,
    small: [0.6344, 1.2378, 0.032496],
    large: [0.4797, 0.93557, -0.06999, 0.033066],
};

const SURFACE_C: Surface = Surface {
    tau_min: -18.83,
    tau_max: 2.74,
    tau_star: -1.61,
    small: [2.1659, 1.4412, 0.038269],
    large: [1.7339, 0.93202, -0.12745, -0.010368],
};

const SURFACE_CT: Surface = Surface {
    tau_min: -16.18,
    tau_max: 0.7,
    tau_star: -2.89,
    small: [3.2512, 1.6047, 0.049588],
    large: [2.5261, 0.61654, -0.37956, -0.060285],
};

fn mackinnon_p(tau: f64, spec: AdfSpec) -> f64 {
    let s = match spec {
        AdfSpec::None => &SURFACE_NC,
        AdfSpec::Constant => &SURFACE_C,
        AdfSpec::ConstantTrend => &SURFACE_CT,
    };
    if tau > s.tau_max {
        return 1.0;
    }
    if tau < s.tau_min {
        return 0.0;
    }
    let z = if tau <= s.tau_star {
        s.small[0] + s.small[1] * tau + s.small[2] * tau * tau
    } else {
        s.large[0] + s.large[1] * tau + s.large[2] * tau * tau + s.large[3] * tau * tau * tau
    };
    let normal = Normal::new(0.0, 1.0).unwrap();
    normal.cdf(z)
}
