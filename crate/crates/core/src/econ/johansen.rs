//! Johansen cointegration test (trace and maximum-eigenvalue statistics)
//! with an unrestricted constant.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Panel;

/// 5% critical values for the unrestricted-constant case, indexed by k - r
/// (number of common trends under the null), for k <= 3 variables.
const TRACE_CRIT_5PCT: [f64; 3] = [3.8415, 15.4943, 29.7961];
const MAXEIG_CRIT_5PCT: [f64; 3] = [3.8415, 14.2639, 21.1314];

#[derive(Debug, Clone, Serialize)]
pub struct JohansenResult {
    /// Eigenvalues of the reduced-rank problem, descending.
    pub eigenvalues: Vec<f64>,
    /// Trace statistic for each hypothesized rank r = 0..k-1.
    pub trace_stats: Vec<f64>,
    pub max_eigen_stats: Vec<f64>,
    pub crit_5pct_trace: Vec<f64>,
    pub crit_5pct_maxeig: Vec<f64>,
    /// Smallest r whose trace statistic is below its critical value
    /// (k when every null is rejected).
    pub inferred_rank: usize,
    pub n_obs: usize,
    pub lag_order: usize,
}

/// Johansen test on the panel columns. `lag_order` is the VAR order in
/// levels; the error-correction form uses `lag_order - 1` lagged differences.
pub fn johansen_test(panel: &Panel, lag_order: usize) -> Result<JohansenResult> {
    let k = panel.n_cols();
    if k < 2 {
        return Err(Error::InvalidArgument(
            "johansen test needs at least two columns".into(),
        ));
    }
    if k > 3 {
        return Err(Error::InvalidArgument(
            "critical values are embedded for k <= 3 variables".into(),
        ));
    }
    if lag_order == 0 {
        return Err(Error::InvalidArgument("lag order must be >= 1".into()));
    }
    for c in panel.columns() {
        if c.missing().iter().any(|&m| m) {
            return Err(Error::InvalidArgument(format!(
                "column '{}' has missing values; johansen needs a gap-free panel",
                c.name
            )));
        }
    }
    let t_total = panel.n_rows();
    if t_total < 10 * k {
        return Err(Error::InsufficientObservations {
            n_obs: t_total,
            n_params: 10 * k,
        });
    }

    let y: Vec<&[f64]> = panel.columns().iter().map(|c| c.values()).collect();
    let p = lag_order - 1; // lagged differences
    // usable sample: dy[t] = y[t] - y[t-1] for t = p+1 .. t_total-1
    let n = t_total - 1 - p;
    if n < 5 * k {
        return Err(Error::InsufficientObservations {
            n_obs: n,
            n_params: 5 * k,
        });
    }

    // regressors: lagged differences and an unrestricted constant
    let z_cols = k * p + 1;
    let mut z = DMatrix::zeros(n, z_cols);
    let mut dy = DMatrix::zeros(n, k);
    let mut lvl = DMatrix::zeros(n, k);
    for (row, t) in (p + 1..t_total).enumerate() {
        for j in 0..k {
            dy[(row, j)] = y[j][t] - y[j][t - 1];
            lvl[(row, j)] = y[j][t - 1];
        }
        for i in 1..=p {
            for j in 0..k {
                z[(row, (i - 1) * k + j)] = y[j][t - i] - y[j][t - i - 1];
            }
        }
        z[(row, z_cols - 1)] = 1.0;
    }

    // residuals from projecting dy and lagged levels off the regressors
    let ztz = z.transpose() * &z;
    let chol = ztz.cholesky().ok_or(Error::SingularCovariance)?;
    let proj = |m: &DMatrix<f64>| -> DMatrix<f64> {
        let beta = chol.solve(&(z.transpose() * m));
        m - &z * beta
    };
    let r0 = proj(&dy);
    let r1 = proj(&lvl);

    let nf = n as f64;
    let s00 = r0.transpose() * &r0 / nf;
    let s01 = r0.transpose() * &r1 / nf;
    let s10 = s01.transpose();
    let s11 = r1.transpose() * &r1 / nf;

    // symmetrized eigenproblem: chol(S11)^-1 S10 S00^-1 S01 chol(S11)^-T
    let s00_chol = s00.cholesky().ok_or(Error::SingularCovariance)?;
    let s11_chol = s11.clone().cholesky().ok_or(Error::SingularCovariance)?;
    let l = s11_chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or(Error::SingularCovariance)?;
    let middle = &s10 * s00_chol.inverse() * &s01;
    let sym = &l_inv * middle * l_inv.transpose();
    let sym = (&sym + sym.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let eigenvalues: Vec<f64> = eigenvalues
        .into_iter()
        .map(|v| v.clamp(0.0, 1.0 - 1e-12))
        .collect();

    let mut trace_stats = Vec::with_capacity(k);
    let mut max_eigen_stats = Vec::with_capacity(k);
    let mut crit_5pct_trace = Vec::with_capacity(k);
    let mut crit_5pct_maxeig = Vec::with_capacity(k);
    for r in 0..k {
        let trace: f64 = eigenvalues[r..].iter().map(|l| -nf * (1.0 - l).ln()).sum();
        trace_stats.push(trace);
        max_eigen_stats.push(-nf * (1.0 - eigenvalues[r]).ln());
        crit_5pct_trace.push(TRACE_CRIT_5PCT[k - r - 1]);
        crit_5pct_maxeig.push(MAXEIG_CRIT_5PCT[k - r - 1]);
    }

    let inferred_rank = trace_stats
        .iter()
        .zip(&crit_5pct_trace)
        .position(|(stat, crit)| stat < crit)
        .unwrap_or(k);

    Ok(JohansenResult {
        eigenvalues,
        trace_stats,
        max_eigen_stats,
        crit_5pct_trace,
        crit_5pct_maxeig,
        inferred_rank,
        n_obs: n,
        lag_order,
    })
}
