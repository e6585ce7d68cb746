//! A small backward-looking quarterly macro model with VAR-style
//! expectations.
//!
//! The model propagates the output gap, price and wage inflation,
//! unemployment, participation, the policy rate, and the 10-year yield one
//! quarter at a time under demand, supply, and monetary shocks. Expectations
//! of (inflation, policy rate, output gap) come from a fixed-coefficient
//! linear forecasting system applied to deviations from the long-run anchor
//! (ptr, r_star + ptr, 0), so drifting long-run expected inflation `ptr` is
//! exactly the un-anchoring channel.

use nalgebra::{DMatrix, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structural parameters. All rates are percent; persistence parameters
/// live in [0, 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelParams {
    /// Interest sensitivity of demand.
    pub sigma: f64,
    /// Demand persistence.
    pub rho_x: f64,
    /// Price Phillips-curve slope.
    pub kappa: f64,
    /// Weight on lagged inflation (vs expected) in the Phillips curve.
    pub lambda: f64,
    /// Wage stickiness.
    pub mu: f64,
    /// Wage Phillips-curve slope on the unemployment gap.
    pub phi: f64,
    /// Okun coefficient: u = nairu - okun * x.
    pub okun: f64,
    pub nairu: f64,
    /// Long-run neutral real rate.
    pub r_star: f64,
    /// Inflation target.
    pub pi_star: f64,
    /// Trend productivity growth (also potential output growth here; the
    /// model has no population growth).
    pub prod_growth: f64,
    /// Inflation impact per dollar of oil-price shock.
    pub oil_passthrough: f64,
    /// 10-year term premium.
    pub term_premium: f64,
    /// Baseline labor force participation rate level.
    pub lfpr_trend: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            sigma: 1.0,
            rho_x: 0.85,
            kappa: 0.1,
            lambda: 0.7,
            mu: 0.8,
            phi: 0.3,
            okun: 0.5,
            nairu: 4.5,
            r_star: 1.0,
            pi_star: 2.0,
            prod_growth: 1.2,
            oil_passthrough: 0.02,
            term_premium: 1.0,
            lfpr_trend: 83.0,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let bound = |name: &str, v: f64, lo: f64, hi: f64| {
            if v < lo || v >= hi || !v.is_finite() {
                Err(Error::BadParams(format!("{name} = {v} outside [{lo}, {hi})")))
            } else {
                Ok(())
            }
        };
        bound("rho_x", self.rho_x, 0.0, 1.0)?;
        bound("lambda", self.lambda, 0.0, 1.0 + 1e-12)?;
        bound("mu", self.mu, 0.0, 1.0 + 1e-12)?;
        for (name, v) in [
            ("sigma", self.sigma),
            ("kappa", self.kappa),
            ("phi", self.phi),
            ("oil_passthrough", self.oil_passthrough),
        ] {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::BadParams(format!("{name} = {v} must be >= 0")));
            }
        }
        if self.okun <= 0.0 {
            return Err(Error::BadParams(format!("okun = {} must be > 0", self.okun)));
        }
        if self.lfpr_trend <= 0.0 || self.lfpr_trend > 100.0 {
            return Err(Error::BadParams(format!(
                "lfpr_trend = {} outside (0, 100]",
                self.lfpr_trend
            )));
        }
        Ok(())
    }

    /// Spectral radius of the shock-free (x, pi) transition closed with the
    /// standard 0.5/0.5 rule and anchored expectations; wage stickiness is
    /// the only other persistent root. Used as the admissibility guard.
    pub fn spectral_radius(&self) -> f64 {
        let a = self.rho_x - self.sigma * 0.5;
        let b = -self.sigma * 0.5;
        let c = self.kappa * a;
        let d = self.lambda + self.kappa * b;
        let tr = a + d;
        let det = a * d - b * c;
        let disc = tr * tr - 4.0 * det;
        let core = if disc >= 0.0 {
            let s = disc.sqrt();
            ((tr + s) / 2.0).abs().max(((tr - s) / 2.0).abs())
        } else {
            det.abs().sqrt()
        };
        core.max(self.mu)
    }

    /// Steady-state values implied by the parameters.
    pub fn steady_state(&self) -> ModelState {
        let u = self.nairu;
        let lfpr = self.lfpr_trend;
        ModelState {
            x: 0.0,
            pi: self.pi_star,
            pi_core: self.pi_star,
            wage: self.pi_star + self.prod_growth,
            u,
            lfpr,
            epop: lfpr * (1.0 - u / 100.0),
            r: self.r_star + self.pi_star,
            rg10: self.r_star + self.pi_star + self.term_premium,
            rgdp_growth: self.prod_growth,
            ptr: self.pi_star,
        }
    }
}

/// One quarter's macro state. All rates percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelState {
    /// Output gap, percent of potential.
    pub x: f64,
    /// 4-quarter PCE inflation.
    pub pi: f64,
    /// Core (ex food and energy) PCE inflation.
    pub pi_core: f64,
    /// Annualized ECI wage growth.
    pub wage: f64,
    /// Unemployment rate.
    pub u: f64,
    /// Labor force participation rate.
    pub lfpr: f64,
    /// Employment-to-population ratio; always lfpr * (1 - u/100).
    pub epop: f64,
    /// Federal funds rate.
    pub r: f64,
    /// 10-year Treasury yield.
    pub rg10: f64,
    /// Real GDP growth.
    pub rgdp_growth: f64,
    /// Long-run expected inflation.
    pub ptr: f64,
}

impl ModelState {
    pub fn validate(&self) -> Result<()> {
        if self.u < 0.0 {
            return Err(Error::BadParams(format!("u = {} must be >= 0", self.u)));
        }
        if self.lfpr <= 0.0 || self.lfpr > 100.0 {
            return Err(Error::BadParams(format!("lfpr = {} outside (0, 100]", self.lfpr)));
        }
        let implied = self.lfpr * (1.0 - self.u / 100.0);
        if (self.epop - implied).abs() > 1e-9 {
            return Err(Error::BadParams(format!(
                "epop = {} violates identity lfpr*(1-u/100) = {implied}",
                self.epop
            )));
        }
        for (name, v) in [("x", self.x), ("pi", self.pi), ("r", self.r), ("ptr", self.ptr)] {
            if !v.is_finite() {
                return Err(Error::BadParams(format!("{name} is not finite")));
            }
        }
        Ok(())
    }
}

/// Exogenous shocks. `start` counts quarters after the initial one (the
/// initial quarter is given, not simulated), `duration` is in quarters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShockKind {
    /// Additive demand residuals, one entry per active quarter
    /// (percent of GDP).
    AggregateDemand { path: Vec<f64> },
    /// Oil price change in dollars per barrel; feeds headline inflation
    /// through `oil_passthrough` but never core.
    Oil { dollars: f64 },
    /// Shift of the participation rate in percentage points.
    LfprShift { points: f64 },
    /// Total drift of long-run expected inflation, spread evenly over the
    /// shock's duration.
    PtrDrift { points: f64 },
    /// Policy-rate surprise in basis points, applied on top of the rule.
    FfrSurprise { bps: f64 },
    /// Government spending boost, percent of GDP per active quarter.
    GovSpending { pct_gdp: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Shock {
    #[serde(flatten)]
    pub kind: ShockKind,
    pub start: usize,
    #[serde(default = "one")]
    pub duration: usize,
}

fn one() -> usize {
    1
}

impl Shock {
    pub fn validate(&self, horizon: usize) -> Result<()> {
        if self.duration < 1 {
            return Err(Error::InvalidArgument("shock duration must be >= 1".into()));
        }
        if let ShockKind::AggregateDemand { path } = &self.kind {
            if path.len() != self.duration {
                return Err(Error::InvalidArgument(format!(
                    "aggregate demand path has {} entries but duration is {}",
                    path.len(),
                    self.duration
                )));
            }
        }
        if self.start < 1 || self.start + self.duration > horizon {
            return Err(Error::InvalidArgument(format!(
                "shock window [{}, {}) falls outside the simulated quarters [1, {horizon})",
                self.start,
                self.start + self.duration
            )));
        }
        Ok(())
    }

    fn active_at(&self, t: usize) -> Option<usize> {
        if t >= self.start && t < self.start + self.duration {
            Some(t - self.start)
        } else {
            None
        }
    }
}

/// Fiscal reaction collapsed to a scalar drag on the output gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiscalRule {
    #[default]
    None,
    /// Mild contemporaneous drag (tax response stabilizing the surplus).
    SurplusStabilizing,
    /// The same drag applied to last quarter's gap.
    DebtStabilizing,
}

const FISCAL_DRAG: f64 = 0.03;

/// Everything exogenous entering one step.
#[derive(Debug, Clone, Copy, Default)]
pub struct Drivers {
    pub ad: f64,
    pub oil: f64,
    pub lfpr_shift: f64,
    pub ptr_drift: f64,
    pub gov: f64,
    pub fiscal: f64,
}

impl Drivers {
    /// Collect the shock terms active when stepping into quarter `t`.
    /// The policy-rate surprise is returned separately since it applies to
    /// the rule rate, not the state equations.
    pub fn collect(shocks: &[Shock], t: usize) -> (Drivers, f64) {
        let mut d = Drivers::default();
        let mut surprise = 0.0;
        for s in shocks {
            if let Some(k) = s.active_at(t) {
                match &s.kind {
                    ShockKind::AggregateDemand { path } => d.ad += path[k],
                    ShockKind::Oil { dollars } => d.oil += dollars,
                    ShockKind::LfprShift { points } => d.lfpr_shift += points,
                    ShockKind::PtrDrift { points } => d.ptr_drift += points / s.duration as f64,
                    ShockKind::FfrSurprise { bps } => surprise += bps / 100.0,
                    ShockKind::GovSpending { pct_gdp } => d.gov += pct_gdp,
                }
            }
        }
        (d, surprise)
    }
}

/// Expected paths of inflation, the policy rate, and the output gap,
/// in levels (anchors already added).
#[derive(Debug, Clone)]
pub struct ExpectedPaths {
    pub pi: Vec<f64>,
    pub r: Vec<f64>,
    pub x: Vec<f64>,
}

impl ExpectedPaths {
    /// Flat paths at the long-run anchor.
    pub fn anchored(ptr: f64, r_star: f64, horizon: usize) -> Self {
        ExpectedPaths {
            pi: vec![ptr; horizon],
            r: vec![r_star + ptr; horizon],
            x: vec![0.0; horizon],
        }
    }

    /// Projected inflation `quarters` ahead (clamped to the path length).
    pub fn projected_pi(&self, quarters: usize) -> f64 {
        let i = quarters.min(self.pi.len() - 1);
        self.pi[i]
    }
}

/// Fixed-coefficient linear forecasting system over (pi, r, x): the
/// expectation of the vector is a sum of lagged vectors weighted by the
/// coefficient matrices for lags `n0..=n1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VarExpectations {
    /// First lag used (usually 1).
    pub n0: usize,
    /// Coefficient matrices, row-major 3x3, one per lag n0, n0+1, ...
    pub coeffs: Vec<[[f64; 3]; 3]>,
}

impl VarExpectations {
    pub fn n1(&self) -> usize {
        self.n0 + self.coeffs.len() - 1
    }

    fn matrices(&self) -> Vec<Matrix3<f64>> {
        self.coeffs
            .iter()
            .map(|m| {
                Matrix3::new(
                    m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1],
                    m[2][2],
                )
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n0 == 0 || self.coeffs.is_empty() {
            return Err(Error::BadParams(
                "expectation system needs lags starting at n0 >= 1".into(),
            ));
        }
        let rho = self.companion_spectral_radius();
        if rho >= 1.0 {
            return Err(Error::Unstable(rho));
        }
        Ok(())
    }

    /// Spectral radius of the companion form; < 1 means the forecast decays
    /// back to the anchor. Estimated by the norm of repeated squarings
    /// (||A^k||^(1/k) -> rho), which is robust for defective matrices.
    pub fn companion_spectral_radius(&self) -> f64 {
        let n1 = self.n1();
        let dim = 3 * n1;
        let mut companion = DMatrix::zeros(dim, dim);
        for (li, m) in self.matrices().iter().enumerate() {
            let lag = self.n0 + li; // 1-based lag
            for a in 0..3 {
                for b in 0..3 {
                    companion[(a, 3 * (lag - 1) + b)] = m[(a, b)];
                }
            }
        }
        for i in 3..dim {
            companion[(i, i - 3)] = 1.0;
        }
        spectral_radius_estimate(&companion)
    }

    /// Frozen coefficients fit once on the bundled 1990-2012 quarterly panel
    /// (pi, r, x as deviations from the long-run anchor), VAR with two lags.
    pub fn calibrated_2012() -> Self {
        VarExpectations {
            n0: 1,
            coeffs: CALIBRATED_2012.to_vec(),
        }
    }
}

// Fit on the bundled historical panel and frozen; see fixtures/.
const CALIBRATED_2012: [[[f64; 3]; 3]; 2] = [
    [
        [1.0859, 0.0184, 0.0951],
        [0.1623, 1.0520, 0.1480],
        [0.0650, 0.0975, 1.1248],
    ],
    [
        [-0.1847, -0.0174, -0.0803],
        [-0.1271, -0.2632, -0.1406],
        [-0.0724, -0.0935, -0.2300],
    ],
];

/// Spectral-radius estimate via Gelfand's formula with 12 squarings:
/// rho = lim ||A^(2^k)||^(1/2^k). The row-sum norm makes the estimate an
/// upper bound that converges from above.
fn spectral_radius_estimate(a: &DMatrix<f64>) -> f64 {
    let inf_norm = |m: &DMatrix<f64>| -> f64 {
        (0..m.nrows())
            .map(|i| m.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let mut m = a.clone();
    let mut log_scale = 0.0f64;
    let mut power = 1.0f64;
    for _ in 0..12 {
        let norm = inf_norm(&m);
        if norm == 0.0 {
            return 0.0;
        }
        m /= norm;
        log_scale = (log_scale + norm.ln()) * 2.0;
        power *= 2.0;
        m = &m * m.clone();
    }
    let tail = inf_norm(&m).max(f64::MIN_POSITIVE);
    ((log_scale + tail.ln()) / power).exp()
}

/// Iterated linear forecast of the raw vectors in `history` (most recent
/// last) for `horizon` steps.
pub fn var_expect(
    history: &[Vector3<f64>],
    e: &VarExpectations,
    horizon: usize,
) -> Result<Vec<Vector3<f64>>> {
    let n1 = e.n1();
    if history.len() < n1 {
        return Err(Error::InsufficientHistory {
            needed: n1,
            have: history.len(),
        });
    }
    let mats = e.matrices();
    let mut buf: Vec<Vector3<f64>> = history[history.len() - n1..].to_vec();
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let mut next = Vector3::zeros();
        for (li, m) in mats.iter().enumerate() {
            let lag = e.n0 + li;
            next += m * buf[buf.len() - lag];
        }
        buf.push(next);
        out.push(next);
    }
    Ok(out)
}

/// Mean of the expected policy-rate path (padded flat with its final value
/// out to 40 quarters) plus the term premium.
pub fn long_yield(expected_rates: &[f64], term_premium: f64) -> Result<f64> {
    if expected_rates.is_empty() {
        return Err(Error::InvalidArgument(
            "long yield needs a nonempty expected rate path".into(),
        ));
    }
    const HORIZON: usize = 40;
    let last = *expected_rates.last().unwrap();
    let sum: f64 = (0..HORIZON)
        .map(|i| expected_rates.get(i).copied().unwrap_or(last))
        .sum();
    Ok(sum / HORIZON as f64 + term_premium)
}

/// Advance the model one quarter under policy rate `r_next`.
pub fn step(
    s: &ModelState,
    r_next: f64,
    drivers: &Drivers,
    p: &ModelParams,
    exp: &ExpectedPaths,
) -> ModelState {
    let x = p.rho_x * s.x - p.sigma * (r_next - s.pi - p.r_star) + drivers.ad + drivers.gov
        + drivers.fiscal;
    let expected_pi = exp.projected_pi(0);
    let pi = p.lambda * s.pi + (1.0 - p.lambda) * expected_pi + p.kappa * x
        + p.oil_passthrough * drivers.oil;
    let pi_core = p.lambda * s.pi_core + (1.0 - p.lambda) * expected_pi + p.kappa * x;

    let u_base = (p.nairu - p.okun * x).max(0.0);
    let lfpr = (p.lfpr_trend + drivers.lfpr_shift).clamp(1.0, 100.0);
    // participation shifts preserve employment: workers leaving the labor
    // force shrink measured unemployment rather than employment
    let u = (100.0 * (1.0 - p.lfpr_trend * (1.0 - u_base / 100.0) / lfpr)).max(0.0);
    let epop = lfpr * (1.0 - u / 100.0);

    let wage = p.mu * s.wage + (1.0 - p.mu) * (pi + p.prod_growth) - p.phi * (u - p.nairu);
    let rgdp_growth = p.prod_growth + (x - s.x);
    let ptr = s.ptr + drivers.ptr_drift;

    // the short end of the expected path is the rate actually chosen
    let mut rate_path = Vec::with_capacity(exp.r.len().max(1));
    rate_path.push(r_next);
    rate_path.extend_from_slice(if exp.r.len() > 1 { &exp.r[1..] } else { &[] });
    let rg10 = long_yield(&rate_path, p.term_premium).expect("nonempty by construction");

    ModelState {
        x,
        pi,
        pi_core,
        wage,
        u,
        lfpr,
        epop,
        r: r_next,
        rg10,
        rgdp_growth,
        ptr,
    }
}

/// How agents form expectations during a simulation.
#[derive(Debug, Clone)]
pub enum ExpectationsMode {
    /// Iterated linear forecast on deviations from the (ptr, r_star + ptr, 0)
    /// anchor.
    Var(VarExpectations),
    /// A known future policy-rate path (rate expectations equal the path;
    /// inflation expectations stay at the anchor). Used by the
    /// optimal-control solver.
    PerfectForesight(Vec<f64>),
}

/// What the policy closure sees each quarter.
pub struct PolicyContext<'a> {
    /// Index of the quarter being decided (1..horizon).
    pub t: usize,
    /// State at the end of the previous quarter.
    pub state: &'a ModelState,
    pub expected: &'a ExpectedPaths,
    /// Active policy-rate surprise (percentage points) to add on top of the
    /// rule.
    pub rate_surprise: f64,
}

/// Horizon the expectation paths are computed over (10 years).
pub const EXPECTATION_HORIZON: usize = 40;

/// Deterministic trajectory of `horizon` quarters; entry 0 is the initial
/// state as given, and the policy closure is consulted once per subsequent
/// quarter.
pub fn simulate<P>(
    initial: &ModelState,
    params: &ModelParams,
    expectations: &ExpectationsMode,
    shocks: &[Shock],
    fiscal: FiscalRule,
    horizon: usize,
    mut policy: P,
) -> Result<Vec<ModelState>>
where
    P: FnMut(&PolicyContext<'_>) -> f64,
{
    if horizon < 1 {
        return Err(Error::InvalidArgument("horizon must be >= 1".into()));
    }
    params.validate()?;
    initial.validate()?;
    let rho = params.spectral_radius();
    if rho >= 1.0 {
        return Err(Error::Unstable(rho));
    }
    for s in shocks {
        s.validate(horizon)?;
    }
    if let ExpectationsMode::Var(e) = expectations {
        e.validate()?;
    }

    let mut states = Vec::with_capacity(horizon);
    states.push(*initial);

    // deviation history for the expectation system, oldest first
    let n1 = match expectations {
        ExpectationsMode::Var(e) => e.n1(),
        ExpectationsMode::PerfectForesight(_) => 1,
    };
    let dev = |s: &ModelState| {
        Vector3::new(s.pi - s.ptr, s.r - (params.r_star + s.ptr), s.x)
    };
    let mut history: Vec<Vector3<f64>> = vec![dev(initial); n1];

    for t in 1..horizon {
        let prev = states[t - 1];
        let expected = expected_paths(expectations, &history, &prev, params, t)?;
        let (mut drivers, surprise) = Drivers::collect(shocks, t);
        if fiscal != FiscalRule::None {
            let gap = match fiscal {
                FiscalRule::SurplusStabilizing => prev.x,
                FiscalRule::DebtStabilizing => {
                    if t >= 2 {
                        states[t - 2].x
                    } else {
                        prev.x
                    }
                }
                FiscalRule::None => 0.0,
            };
            drivers.fiscal = -FISCAL_DRAG * gap;
        }
        let ctx = PolicyContext {
            t,
            state: &prev,
            expected: &expected,
            rate_surprise: surprise,
        };
        let r_next = policy(&ctx);
        if !r_next.is_finite() {
            return Err(Error::BadParams(format!("policy returned non-finite rate at t={t}")));
        }
        let next = step(&prev, r_next, &drivers, params, &expected);
        history.push(dev(&next));
        states.push(next);
    }
    Ok(states)
}

/// Expectation paths in levels for the quarter being decided.
pub fn expected_paths(
    mode: &ExpectationsMode,
    history: &[Vector3<f64>],
    current: &ModelState,
    params: &ModelParams,
    t: usize,
) -> Result<ExpectedPaths> {
    match mode {
        ExpectationsMode::Var(e) => {
            let devs = var_expect(history, e, EXPECTATION_HORIZON)?;
            let anchor_r = params.r_star + current.ptr;
            Ok(ExpectedPaths {
                pi: devs.iter().map(|v| v[0] + current.ptr).collect(),
                r: devs.iter().map(|v| v[1] + anchor_r).collect(),
                x: devs.iter().map(|v| v[2]).collect(),
            })
        }
        ExpectationsMode::PerfectForesight(path) => {
            let mut r = Vec::with_capacity(EXPECTATION_HORIZON);
            let last = path.last().copied().unwrap_or(params.r_star + current.ptr);
            for j in 0..EXPECTATION_HORIZON {
                // rates from the announced path, starting at the decision
                // quarter; held flat past the end
                r.push(path.get(t - 1 + j).copied().unwrap_or(last));
            }
            Ok(ExpectedPaths {
                pi: vec![current.ptr; EXPECTATION_HORIZON],
                r,
                x: vec![0.0; EXPECTATION_HORIZON],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_expectations() -> VarExpectations {
        VarExpectations {
            n0: 1,
            coeffs: vec![[[0.0; 3]; 3]],
        }
    }

    fn steady_policy(params: &ModelParams) -> impl Fn(&PolicyContext<'_>) -> f64 + '_ {
        move |ctx| {
            params.r_star + ctx.state.pi + 0.5 * (ctx.state.pi - params.pi_star)
                + 0.5 * ctx.state.x
                + ctx.rate_surprise
        }
    }

    #[test]
    fn var_expect_zero_map() {
        let e = zero_expectations();
        let hist = vec![Vector3::new(2.0, 1.0, 0.5)];
        let out = var_expect(&hist, &e, 5).unwrap();
        assert!(out.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn var_expect_identity_repeats_last() {
        let e = VarExpectations {
            n0: 1,
            coeffs: vec![[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]],
        };
        let hist = vec![Vector3::new(2.0, 1.0, 0.5)];
        let out = var_expect(&hist, &e, 3).unwrap();
        for v in out {
            assert_eq!(v, Vector3::new(2.0, 1.0, 0.5));
        }
    }

    #[test]
    fn var_expect_halving_diagonal() {
        let e = VarExpectations {
            n0: 1,
            coeffs: vec![[[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5]]],
        };
        let hist = vec![Vector3::new(2.0, 1.0, 0.5)];
        let out = var_expect(&hist, &e, 1).unwrap();
        assert_eq!(out[0], Vector3::new(1.0, 0.5, 0.25));
    }

    #[test]
    fn var_expect_needs_history() {
        let e = VarExpectations {
            n0: 1,
            coeffs: vec![[[0.0; 3]; 3]; 2],
        };
        assert!(matches!(
            var_expect(&[Vector3::zeros()], &e, 4),
            Err(Error::InsufficientHistory { .. })
        ));
    }

    #[test]
    fn calibrated_expectations_are_stationary() {
        let e = VarExpectations::calibrated_2012();
        assert!(e.companion_spectral_radius() < 1.0);
        e.validate().unwrap();
    }

    #[test]
    fn long_yield_flat_path() {
        assert_eq!(long_yield(&[3.0; 40], 1.0).unwrap(), 4.0);
    }

    #[test]
    fn long_yield_linear_path_mean() {
        // 40 evenly spaced points from 0 to 4 inclusive average to 2
        let path: Vec<f64> = (0..40).map(|i| 4.0 * i as f64 / 39.0).collect();
        assert!((long_yield(&path, 0.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn long_yield_empty_errors() {
        assert!(long_yield(&[], 1.0).is_err());
    }

    #[test]
    fn long_yield_short_path_padded() {
        assert_eq!(long_yield(&[2.0], 0.5).unwrap(), 2.5);
    }

    #[test]
    fn steady_state_is_step_fixed_point() {
        let p = ModelParams::default();
        let ss = p.steady_state();
        ss.validate().unwrap();
        let exp = ExpectedPaths::anchored(ss.ptr, p.r_star, EXPECTATION_HORIZON);
        let next = step(&ss, p.r_star + p.pi_star, &Drivers::default(), &p, &exp);
        assert!((next.x - ss.x).abs() < 1e-12);
        assert!((next.pi - ss.pi).abs() < 1e-12);
        assert!((next.wage - ss.wage).abs() < 1e-12);
        assert!((next.u - ss.u).abs() < 1e-12);
        assert!((next.epop - ss.epop).abs() < 1e-12);
        assert!((next.rg10 - ss.rg10).abs() < 1e-12);
    }

    #[test]
    fn ad_shock_is_additive_with_sigma_zero() {
        let p = ModelParams {
            sigma: 0.0,
            ..ModelParams::default()
        };
        let ss = p.steady_state();
        let exp = ExpectedPaths::anchored(ss.ptr, p.r_star, 4);
        let base = step(&ss, ss.r, &Drivers::default(), &p, &exp);
        let shocked = step(
            &ss,
            ss.r,
            &Drivers {
                ad: -1.0,
                ..Drivers::default()
            },
            &p,
            &exp,
        );
        assert!((base.x - shocked.x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oil_shock_moves_headline_not_core() {
        let p = ModelParams::default();
        let ss = p.steady_state();
        let exp = ExpectedPaths::anchored(ss.ptr, p.r_star, 4);
        let base = step(&ss, ss.r, &Drivers::default(), &p, &exp);
        let shocked = step(
            &ss,
            ss.r,
            &Drivers {
                oil: 20.0,
                ..Drivers::default()
            },
            &p,
            &exp,
        );
        assert!((shocked.pi - base.pi - 0.4).abs() < 1e-12);
        assert_eq!(shocked.pi_core, base.pi_core);
    }

    #[test]
    fn lfpr_shift_preserves_employment() {
        let p = ModelParams::default();
        let ss = p.steady_state();
        let exp = ExpectedPaths::anchored(ss.ptr, p.r_star, 4);
        let shocked = step(
            &ss,
            ss.r,
            &Drivers {
                lfpr_shift: -2.0,
                ..Drivers::default()
            },
            &p,
            &exp,
        );
        let base = step(&ss, ss.r, &Drivers::default(), &p, &exp);
        // employment per capita unchanged, so epop is unchanged and measured
        // unemployment falls
        assert!((shocked.epop - base.epop).abs() < 1e-9);
        assert!(shocked.u < base.u);
        assert!((shocked.lfpr - (p.lfpr_trend - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn epop_identity_holds_every_quarter() {
        let p = ModelParams::default();
        let initial = p.steady_state();
        let shocks = vec![Shock {
            kind: ShockKind::AggregateDemand {
                path: vec![-1.5, -2.0, -1.0],
            },
            start: 1,
            duration: 3,
        }];
        let traj = simulate(
            &initial,
            &p,
            &ExpectationsMode::Var(zero_expectations()),
            &shocks,
            FiscalRule::None,
            20,
            steady_policy(&p),
        )
        .unwrap();
        for s in &traj {
            assert!((s.epop - s.lfpr * (1.0 - s.u / 100.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_shocks_from_steady_state_is_flat() {
        let p = ModelParams::default();
        let initial = p.steady_state();
        let traj = simulate(
            &initial,
            &p,
            &ExpectationsMode::Var(zero_expectations()),
            &[],
            FiscalRule::None,
            40,
            steady_policy(&p),
        )
        .unwrap();
        for s in &traj {
            assert!((s.x - initial.x).abs() < 1e-9);
            assert!((s.pi - initial.pi).abs() < 1e-9);
            assert!((s.r - initial.r).abs() < 1e-9);
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let p = ModelParams::default();
        let initial = p.steady_state();
        let shocks = vec![Shock {
            kind: ShockKind::Oil { dollars: 20.0 },
            start: 2,
            duration: 2,
        }];
        let run = || {
            simulate(
                &initial,
                &p,
                &ExpectationsMode::Var(VarExpectations::calibrated_2012()),
                &shocks,
                FiscalRule::SurplusStabilizing,
                24,
                steady_policy(&p),
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
    }

    #[test]
    fn ad_response_is_linear_in_shock_size() {
        let p = ModelParams::default();
        let initial = p.steady_state();
        let mk = |scale: f64| {
            vec![Shock {
                kind: ShockKind::AggregateDemand {
                    path: vec![-1.0 * scale, -0.5 * scale],
                },
                start: 1,
                duration: 2,
            }]
        };
        let run = |shocks: &[Shock]| {
            simulate(
                &initial,
                &p,
                &ExpectationsMode::Var(VarExpectations::calibrated_2012()),
                shocks,
                FiscalRule::None,
                24,
                steady_policy(&p),
            )
            .unwrap()
        };
        let base = run(&[]);
        let one = run(&mk(1.0));
        let two = run(&mk(2.0));
        for t in 0..24 {
            let d1 = one[t].x - base[t].x;
            let d2 = two[t].x - base[t].x;
            assert!((d2 - 2.0 * d1).abs() < 1e-9, "t={t} d1={d1} d2={d2}");
        }
    }

    #[test]
    fn ad_shock_mean_reverts() {
        let p = ModelParams::default();
        let initial = p.steady_state();
        let shocks = vec![Shock {
            kind: ShockKind::AggregateDemand {
                path: vec![-1.5, -2.0, -1.5, -1.0, -0.5, -0.25],
            },
            start: 1,
            duration: 6,
        }];
        let traj = simulate(
            &initial,
            &p,
            &ExpectationsMode::Var(VarExpectations::calibrated_2012()),
            &shocks,
            FiscalRule::None,
            24,
            steady_policy(&p),
        )
        .unwrap();
        let peak = traj.iter().map(|s| s.x.abs()).fold(0.0, f64::max);
        let last = traj.last().unwrap().x.abs();
        assert!(peak > 1.0);
        assert!(last < 0.1 * peak, "x_T = {last}, peak = {peak}");
    }

    #[test]
    fn unstable_parameters_refused() {
        let p = ModelParams {
            rho_x: 0.999,
            sigma: 0.0,
            lambda: 1.0,
            kappa: 0.5,
            ..ModelParams::default()
        };
        let initial = p.steady_state();
        let r = simulate(
            &initial,
            &p,
            &ExpectationsMode::Var(zero_expectations()),
            &[],
            FiscalRule::None,
            8,
            |_| 3.0,
        );
        assert!(matches!(r, Err(Error::Unstable(_))));
    }

    #[test]
    fn shock_outside_horizon_rejected() {
        let p = ModelParams::default();
        let initial = p.steady_state();
        let shocks = vec![Shock {
            kind: ShockKind::Oil { dollars: 20.0 },
            start: 30,
            duration: 2,
        }];
        let r = simulate(
            &initial,
            &p,
            &ExpectationsMode::Var(zero_expectations()),
            &shocks,
            FiscalRule::None,
            8,
            |_| 3.0,
        );
        assert!(r.is_err());
    }
}
