//! Ordinary least squares with conventional (non-robust) standard errors.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::series::{align, Panel, TimeSeries};

/// Fitted regression: point estimates, conventional standard errors,
/// two-sided t-test p-values, and residual diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct RegressionResult {
    /// Regressor names, intercept (when present) first.
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r2: f64,
    pub adj_r2: f64,
    pub residuals: Vec<f64>,
    pub n_obs: usize,
    pub intercept: bool,
    /// Residual variance estimate, RSS / (n - k).
    pub sigma2: f64,
    pub rss: f64,
}

impl RegressionResult {
    pub fn k(&self) -> usize {
        self.coefficients.len()
    }
}

/// OLS of `y` on the columns of `X`, rows with any missing cell dropped.
pub fn ols(y: &TimeSeries, x: &Panel, intercept: bool) -> Result<RegressionResult> {
    let mut all = vec![y.clone()];
    all.extend(x.columns().iter().cloned());
    let joint = align(&all)?;
    let data = joint.complete_data();
    let names: Vec<String> = x.columns().iter().map(|c| c.name.clone()).collect();
    let cols: Vec<&[f64]> = data[1..].iter().map(|c| c.as_slice()).collect();
    ols_raw(&data[0], &cols, &names, intercept)
}

/// OLS on raw column slices. `cols` excludes the intercept; pass
/// `intercept = true` to prepend a constant.
pub fn ols_raw(
    y: &[f64],
    cols: &[&[f64]],
    names: &[String],
    intercept: bool,
) -> Result<RegressionResult> {
    let n = y.len();
    let k = cols.len() + intercept as usize;
    if n <= k {
        return Err(Error::InsufficientObservations {
            n_obs: n,
            n_params: k,
        });
    }
    for c in cols {
        if c.len() != n {
            return Err(Error::InvalidArgument(
                "regressor length differs from response".into(),
            ));
        }
    }

    let mut x = DMatrix::zeros(n, k);
    if intercept {
        x.column_mut(0).fill(1.0);
    }
    for (j, c) in cols.iter().enumerate() {
        let col = j + intercept as usize;
        for i in 0..n {
            x[(i, col)] = c[i];
        }
    }

    // rank check on the design before solving the normal equations
    let qr = x.clone().col_piv_qr();
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let rank = qr.r().diagonal().iter().filter(|d| d.abs() > 1e-10 * scale).count();
    if rank < k {
        return Err(Error::RankDeficient(rank));
    }

    let xtx = x.transpose() * &x;
    let xty = x.transpose() * DVector::from_column_slice(y);
    let chol = xtx
        .clone()
        .cholesky()
        .ok_or(Error::RankDeficient(rank))?;
    let beta = chol.solve(&xty);
    let xtx_inv = chol.inverse();

    let fitted = &x * &beta;
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let df = (n - k) as f64;
    let sigma2 = rss / df;

    // centered TSS with an intercept, uncentered without
    let tss = if intercept {
        let ybar = y.iter().sum::<f64>() / n as f64;
        y.iter().map(|v| (v - ybar).powi(2)).sum::<f64>()
    } else {
        y.iter().map(|v| v * v).sum::<f64>()
    };
    let r2 = if tss > 0.0 { 1.0 - rss / tss } else { 1.0 };
    let adj_r2 = if intercept {
        1.0 - (1.0 - r2) * (n as f64 - 1.0) / df
    } else {
        1.0 - (1.0 - r2) * n as f64 / df
    };

    let tdist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut std_errors = Vec::with_capacity(k);
    let mut t_stats = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for j in 0..k {
        let se = (sigma2 * xtx_inv[(j, j)]).max(0.0).sqrt();
        let b = beta[j];
        let t = if se > 0.0 {
            b / se
        } else if b == 0.0 {
            0.0
        } else {
            f64::INFINITY * b.signum()
        };
        std_errors.push(se);
        t_stats.push(t);
        p_values.push(if t.is_finite() {
            2.0 * (1.0 - tdist.cdf(t.abs()))
        } else {
            0.0
        });
    }

    let mut out_names = Vec::with_capacity(k);
    if intercept {
        out_names.push("const".to_string());
    }
    out_names.extend(names.iter().cloned());

    Ok(RegressionResult {
        names: out_names,
        coefficients: beta.iter().copied().collect(),
        std_errors,
        t_stats,
        p_values,
        r2,
        adj_r2,
        residuals,
        n_obs: n,
        intercept,
        sigma2,
        rss,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Freq, Period, TimeSeries};

    fn q(year: i32, sub: u32) -> Period {
        Period::new(year, sub, Freq::Quarterly).unwrap()
    }

    fn fit(y: Vec<f64>, x: Vec<f64>) -> RegressionResult {
        let ys = TimeSeries::dense("y", q(2000, 1), y).unwrap();
        let xs = TimeSeries::dense("x", q(2000, 1), x).unwrap();
        let panel = align(&[xs]).unwrap();
        ols(&ys, &panel, true).unwrap()
    }

    #[test]
    fn perfect_fit() {
        let r = fit(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]);
        assert!((r.coefficients[0] - 0.0).abs() < 1e-12);
        assert!((r.coefficients[1] - 1.0).abs() < 1e-12);
        assert!((r.adj_r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_response() {
        let r = fit(vec![2.0, 2.0, 2.0], vec![1.0, 2.0, 3.0]);
        assert!((r.coefficients[0] - 2.0).abs() < 1e-12);
        assert!(r.coefficients[1].abs() < 1e-12);
    }

    #[test]
    fn hand_computed_normal_equations() {
        // Sxy = 4.5, Sxx = 5 -> slope 0.9, intercept 0
        let r = fit(vec![1.0, 2.0, 2.0, 4.0], vec![1.0, 2.0, 3.0, 4.0]);
        assert!((r.coefficients[1] - 0.9).abs() < 1e-10);
        assert!(r.coefficients[0].abs() < 1e-10);
    }

    #[test]
    fn residual_mean_zero_with_intercept() {
        let r = fit(vec![1.0, 3.0, 2.0, 5.0, 4.0], vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        let mean: f64 = r.residuals.iter().sum::<f64>() / r.residuals.len() as f64;
        assert!(mean.abs() < 1e-10);
        assert_eq!(r.residuals.len(), r.n_obs);
    }

    #[test]
    fn t_stats_match_ratio() {
        let r = fit(vec![1.0, 3.0, 2.0, 5.0, 4.0], vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        for j in 0..r.k() {
            if r.std_errors[j] > 0.0 {
                assert!((r.t_stats[j] - r.coefficients[j] / r.std_errors[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_column_with_intercept_is_rank_deficient() {
        let ys = TimeSeries::dense("y", q(2000, 1), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let xs = TimeSeries::dense("x", q(2000, 1), vec![5.0, 5.0, 5.0, 5.0]).unwrap();
        let panel = align(&[xs]).unwrap();
        assert!(matches!(ols(&ys, &panel, true), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn too_few_observations() {
        let ys = TimeSeries::dense("y", q(2000, 1), vec![1.0, 2.0]).unwrap();
        let xs = TimeSeries::dense("x", q(2000, 1), vec![1.0, 2.0]).unwrap();
        let panel = align(&[xs]).unwrap();
        assert!(matches!(
            ols(&ys, &panel, true),
            Err(Error::InsufficientObservations { .. })
        ));
    }

    #[test]
    fn missing_rows_dropped_listwise() {
        let ys = TimeSeries::new(
            "y",
            q(2000, 1),
            vec![1.0, 99.0, 3.0, 4.0, 5.0],
            vec![false, true, false, false, false],
        )
        .unwrap();
        let xs = TimeSeries::dense("x", q(2000, 1), vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let panel = align(&[xs]).unwrap();
        let r = ols(&ys, &panel, true).unwrap();
        assert_eq!(r.n_obs, 4);
        assert!((r.coefficients[1] - 1.0).abs() < 1e-10);
    }
}
