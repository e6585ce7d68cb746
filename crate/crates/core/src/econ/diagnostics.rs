//! Regression diagnostics: Harvey-Collier linearity test, White's
//! heteroskedasticity test, and Pearson correlation matrices.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor, StudentsT};

use crate::econ::ols::{ols_raw, RegressionResult};
use crate::error::{Error, Result};
use crate::series::Panel;

/// A test statistic with its p-value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TestStat {
    pub statistic: f64,
    pub p_value: f64,
}

/// Harvey-Collier test for linearity: a one-sample t-test that the recursive
/// residuals (observations taken in time order) have zero mean. p > 0.05
/// means the linear specification is not rejected.
pub fn harvey_collier(
    reg: &RegressionResult,
    y: &[f64],
    cols: &[&[f64]],
) -> Result<TestStat> {
    let n = y.len();
    let k = cols.len() + reg.intercept as usize;
    if n < k + 2 {
        return Err(Error::InsufficientObservations {
            n_obs: n,
            n_params: k + 2,
        });
    }
    if reg.n_obs != n {
        return Err(Error::InvalidArgument(
            "regression result does not match supplied sample".into(),
        ));
    }

    let mut x = DMatrix::zeros(n, k);
    if reg.intercept {
        x.column_mut(0).fill(1.0);
    }
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            x[(i, j + reg.intercept as usize)] = c[i];
        }
    }

    // recursive residuals w_t for t = k+1..n, each standardized by the
    // one-step-ahead prediction variance
    let mut w = Vec::with_capacity(n - k);
    for t in k..n {
        let xt = x.rows(0, t);
        let yt = DVector::from_column_slice(&y[..t]);
        let xtx = xt.transpose() * xt;
        let chol = xtx.cholesky().ok_or(Error::RankDeficient(k))?;
        let beta = chol.solve(&(xt.transpose() * yt));
        let xtx_inv = chol.inverse();
        let xrow = x.row(t).transpose();
        let denom = 1.0 + (xrow.transpose() * &xtx_inv * &xrow)[(0, 0)];
        let pred = (xrow.transpose() * beta)[(0, 0)];
        w.push((y[t] - pred) / denom.sqrt());
    }

    let m = w.len() as f64;
    let mean = w.iter().sum::<f64>() / m;
    let var = w.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let statistic = mean / (var / m).sqrt();
    let tdist =
        StudentsT::new(0.0, 1.0, m - 1.0).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let p_value = 2.0 * (1.0 - tdist.cdf(statistic.abs()));
    Ok(TestStat { statistic, p_value })
}

/// White's heteroskedasticity test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WhiteResult {
    pub lm: TestStat,
    pub f: TestStat,
}

/// Regress squared residuals on the regressors, their squares, and cross
/// products; LM = n * R-squared of the auxiliary regression.
pub fn white_test(reg: &RegressionResult, _y: &[f64], cols: &[&[f64]]) -> Result<WhiteResult> {
    let n = reg.residuals.len();
    let j = cols.len();
    if j == 0 {
        return Err(Error::InvalidArgument(
            "white test needs at least one regressor".into(),
        ));
    }
    for c in cols {
        if c.len() != n {
            return Err(Error::InvalidArgument(
                "regressor length differs from residuals".into(),
            ));
        }
    }
    let e2: Vec<f64> = reg.residuals.iter().map(|e| e * e).collect();

    let mut aux: Vec<Vec<f64>> = Vec::new();
    let mut names = Vec::new();
    for (a, c) in cols.iter().enumerate() {
        aux.push(c.to_vec());
        names.push(format!("x{a}"));
    }
    for (a, c) in cols.iter().enumerate() {
        aux.push(c.iter().map(|v| v * v).collect());
        names.push(format!("x{a}^2"));
    }
    for a in 0..j {
        for b in (a + 1)..j {
            aux.push(cols[a].iter().zip(cols[b]).map(|(u, v)| u * v).collect());
            names.push(format!("x{a}*x{b}"));
        }
    }
    let aux_k = aux.len() + 1; // plus intercept
    if n <= aux_k {
        return Err(Error::InsufficientObservations {
            n_obs: n,
            n_params: aux_k,
        });
    }
    let aux_refs: Vec<&[f64]> = aux.iter().map(|c| c.as_slice()).collect();
    let fit = ols_raw(&e2, &aux_refs, &names, true)?;

    let df = (aux_k - 1) as f64;
    let lm_stat = n as f64 * fit.r2;
    let chi = ChiSquared::new(df).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let lm_p = 1.0 - chi.cdf(lm_stat);

    let df2 = (n - aux_k) as f64;
    let f_stat = (fit.r2 / df) / ((1.0 - fit.r2) / df2);
    let fdist =
        FisherSnedecor::new(df, df2).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let f_p = 1.0 - fdist.cdf(f_stat.max(0.0));

    Ok(WhiteResult {
        lm: TestStat {
            statistic: lm_stat,
            p_value: lm_p,
        },
        f: TestStat {
            statistic: f_stat,
            p_value: f_p,
        },
    })
}

/// Pearson correlations over the panel's complete rows.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    /// Row-major symmetric matrix with unit diagonal.
    pub values: Vec<Vec<f64>>,
}

pub fn correlation_matrix(panel: &Panel) -> Result<CorrelationMatrix> {
    let data = panel.complete_data();
    let n = data[0].len();
    if n < 2 {
        return Err(Error::InsufficientObservations {
            n_obs: n,
            n_params: 2,
        });
    }
    let k = data.len();
    let means: Vec<f64> = data.iter().map(|c| c.iter().sum::<f64>() / n as f64).collect();
    let sds: Vec<f64> = data
        .iter()
        .zip(&means)
        .map(|(c, m)| (c.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n as f64).sqrt())
        .collect();
    for (j, sd) in sds.iter().enumerate() {
        if *sd == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "column '{}' has zero variance",
                panel.columns()[j].name
            )));
        }
    }
    let mut values = vec![vec![0.0; k]; k];
    for a in 0..k {
        values[a][a] = 1.0;
        for b in (a + 1)..k {
            let cov = data[a]
                .iter()
                .zip(&data[b])
                .map(|(u, v)| (u - means[a]) * (v - means[b]))
                .sum::<f64>()
                / n as f64;
            let r = cov / (sds[a] * sds[b]);
            values[a][b] = r;
            values[b][a] = r;
        }
    }
    Ok(CorrelationMatrix {
        names: panel.columns().iter().map(|c| c.name.clone()).collect(),
        values,
    })
}
