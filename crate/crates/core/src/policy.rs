//! Policy-rate reaction functions, the effective lower bound, and the
//! threshold-gated liftoff latch.
//!
//! Liftoff works through a block of 0/1 indicators: the labor-side switch
//! fires when unemployment reaches its threshold from above, the
//! inflation-side switch fires when the configured measure (projected
//! inflation, wage growth, or the employment-to-population ratio) strictly
//! exceeds its threshold, and the latch keeps the release permanent once
//! either side has fired.

use serde::{Deserialize, Serialize};

use crate::model::ModelState;

/// Reaction-function coefficients.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct RuleParams {
    /// Inflation-gap coefficient.
    pub a_pi: f64,
    /// Output-gap coefficient.
    pub a_y: f64,
    /// Weight on the lagged rate in the inertial rule.
    pub inertia: f64,
    /// Unemployment-gap coefficient in the unemployment-gap rule.
    pub u_gap_coeff: f64,
    /// Inflation coefficient in the unemployment-gap rule.
    pub u_pi_coeff: f64,
    /// Effective lower bound (midpoint of the 0-25bp target range).
    pub elb: f64,
}

impl Default for RuleParams {
    fn default() -> Self {
        RuleParams {
            a_pi: 0.5,
            a_y: 0.5,
            inertia: 0.85,
            u_gap_coeff: 1.1,
            u_pi_coeff: 0.375,
            elb: 0.125,
        }
    }
}

impl RuleParams {
    /// Coefficients for the aggressive variant: both gap responses raised
    /// to 2.
    pub fn aggressive() -> Self {
        RuleParams {
            a_pi: 2.0,
            a_y: 2.0,
            ..RuleParams::default()
        }
    }
}

/// Standard rule: r* + pi + a_pi (pi - pi*) + a_y x.
pub fn taylor(state: &ModelState, p: &RuleParams, r_star: f64, pi_star: f64) -> f64 {
    r_star + state.pi + p.a_pi * (state.pi - pi_star) + p.a_y * state.x
}

/// Convex combination of the lagged rate and the standard rule.
pub fn inertial_taylor(
    prev_r: f64,
    state: &ModelState,
    p: &RuleParams,
    r_star: f64,
    pi_star: f64,
) -> f64 {
    p.inertia * prev_r + (1.0 - p.inertia) * taylor(state, p, r_star, pi_star)
}

/// Unemployment-gap rule as printed:
/// r* + pi + u_pi_coeff pi - a_pi pi* + u_gap_coeff (u - nairu).
///
/// Note the positive default sign on the unemployment gap: the rate RISES
/// when unemployment is above the natural rate. That follows the source
/// formula as printed; flip `u_gap_coeff` to get the conventional sign.
pub fn unemp_gap_taylor(
    state: &ModelState,
    p: &RuleParams,
    r_star: f64,
    pi_star: f64,
    nairu: f64,
) -> f64 {
    r_star + state.pi + p.u_pi_coeff * state.pi - p.a_pi * pi_star
        + p.u_gap_coeff * (state.u - nairu)
}

/// Aggressive rule: the standard form with large coefficients, floored at
/// zero.
pub fn modified_taylor(state: &ModelState, p: &RuleParams, r_star: f64, pi_star: f64) -> f64 {
    taylor(state, p, r_star, pi_star).max(0.0)
}

/// Which measure sits on the inflation side of the threshold pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "side", content = "value", rename_all = "snake_case")]
pub enum InflationSide {
    /// Projected four-quarter inflation one year ahead.
    PceProjected(f64),
    /// Current wage growth.
    EciWage(f64),
    /// Employment-to-population floor: fires when epop rises through it.
    EpopFloor(f64),
}

impl InflationSide {
    pub fn threshold(&self) -> f64 {
        match self {
            InflationSide::PceProjected(v)
            | InflationSide::EciWage(v)
            | InflationSide::EpopFloor(v) => *v,
        }
    }
}

/// Threshold configuration; `active` is the master switch for
/// threshold-based guidance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub unrate_thresh: f64,
    pub inflation_side: InflationSide,
    pub active: bool,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            unrate_thresh: 6.5,
            inflation_side: InflationSide::PceProjected(2.5),
            active: true,
        }
    }
}

impl ThresholdConfig {
    pub fn validate(&self) -> crate::Result<()> {
        let side = self.inflation_side.threshold();
        if !(self.unrate_thresh.is_finite() && self.unrate_thresh > 0.0)
            || !(side.is_finite() && side > 0.0)
        {
            return Err(crate::Error::Config(
                "thresholds must be finite and positive".into(),
            ));
        }
        Ok(())
    }
}

/// The indicator block controlling liftoff.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ThresholdState {
    /// Labor-side release: unemployment no longer above its threshold.
    pub dmptunrate: bool,
    /// Inflation-side release: the configured measure strictly above its
    /// threshold.
    pub dmpt_infl: bool,
    /// max of the two sides.
    pub dmptmax: bool,
    /// The latch: once set it stays set for the rest of the simulation.
    pub dmptr: bool,
    /// The raw indicator as printed (unemployment strictly above threshold),
    /// exposed for inspection.
    pub raw_unrate_above: bool,
}

/// Observables the indicators are evaluated on.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdObs {
    pub unrate: f64,
    pub wage: f64,
    pub epop: f64,
    pub projected_pce: f64,
}

impl ThresholdObs {
    pub fn from_state(state: &ModelState, projected_pce: f64) -> Self {
        ThresholdObs {
            unrate: state.u,
            wage: state.wage,
            epop: state.epop,
            projected_pce,
        }
    }
}

/// Advance the indicator block one observation. The unemployment side fires
/// when `unrate > thresh` is false (the rate has come down to the
/// threshold); the inflation side fires on a strict exceedance, so a value
/// exactly at its threshold does not fire.
pub fn update_thresholds(
    ts: &ThresholdState,
    obs: &ThresholdObs,
    cfg: &ThresholdConfig,
) -> ThresholdState {
    let raw_unrate_above = obs.unrate > cfg.unrate_thresh;
    let dmptunrate = !raw_unrate_above;
    let dmpt_infl = match cfg.inflation_side {
        InflationSide::PceProjected(t) => obs.projected_pce > t,
        InflationSide::EciWage(t) => obs.wage > t,
        InflationSide::EpopFloor(t) => obs.epop > t,
    };
    let dmptmax = dmptunrate || dmpt_infl;
    ThresholdState {
        dmptunrate,
        dmpt_infl,
        dmptmax,
        dmptr: dmptmax || ts.dmptr,
        raw_unrate_above,
    }
}

/// The rate actually set: held at the bound while guidance is active and
/// the latch has not fired, otherwise the rule rate floored at the bound.
pub fn effective_rate(rule_rate: f64, ts: &ThresholdState, cfg: &ThresholdConfig, elb: f64) -> f64 {
    if cfg.active && !ts.dmptr {
        elb
    } else {
        rule_rate.max(elb)
    }
}

/// First quarter the effective rate rises above the bound.
pub fn liftoff_quarter(rates: &[f64], elb: f64) -> Option<usize> {
    rates.iter().position(|&r| r > elb + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;

    fn state(pi: f64, x: f64) -> ModelState {
        let p = ModelParams::default();
        let mut s = p.steady_state();
        s.pi = pi;
        s.x = x;
        s
    }

    const R_STAR: f64 = 1.0;
    const PI_STAR: f64 = 2.0;

    #[test]
    fn taylor_at_target() {
        let p = RuleParams::default();
        assert_eq!(taylor(&state(2.0, 0.0), &p, R_STAR, PI_STAR), 3.0);
    }

    #[test]
    fn taylor_inflation_gap() {
        let p = RuleParams::default();
        assert_eq!(taylor(&state(3.0, 0.0), &p, R_STAR, PI_STAR), 4.5);
    }

    #[test]
    fn taylor_output_gap() {
        let p = RuleParams::default();
        assert_eq!(taylor(&state(2.0, -2.0), &p, R_STAR, PI_STAR), 2.0);
    }

    #[test]
    fn inertial_fixed_point_and_blend() {
        let p = RuleParams::default();
        let s = state(2.0, 0.0);
        let rt = taylor(&s, &p, R_STAR, PI_STAR);
        assert_eq!(inertial_taylor(rt, &s, &p, R_STAR, PI_STAR), rt);
        // prev 0, taylor 4 -> 0.6
        let s2 = state(8.0 / 3.0, 0.0);
        let rt2 = taylor(&s2, &p, R_STAR, PI_STAR);
        assert!((rt2 - 4.0).abs() < 1e-12);
        assert!((inertial_taylor(0.0, &s2, &p, R_STAR, PI_STAR) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn inertial_zero_inertia_is_taylor() {
        let p = RuleParams {
            inertia: 0.0,
            ..RuleParams::default()
        };
        let s = state(2.7, 1.3);
        assert_eq!(
            inertial_taylor(9.9, &s, &p, R_STAR, PI_STAR),
            taylor(&s, &p, R_STAR, PI_STAR)
        );
    }

    #[test]
    fn inertial_lies_between_prev_and_rule() {
        let p = RuleParams::default();
        let s = state(3.1, -0.7);
        let rt = taylor(&s, &p, R_STAR, PI_STAR);
        for prev in [0.0, 2.0, 6.0] {
            let r = inertial_taylor(prev, &s, &p, R_STAR, PI_STAR);
            let (lo, hi) = if prev <= rt { (prev, rt) } else { (rt, prev) };
            assert!(r >= lo - 1e-12 && r <= hi + 1e-12);
        }
    }

    #[test]
    fn unemp_gap_rule_printed_form() {
        let p = RuleParams::default();
        let mut s = state(2.0, 0.0);
        s.u = 4.5; // at nairu
        assert!((unemp_gap_taylor(&s, &p, R_STAR, PI_STAR, 4.5) - 2.75).abs() < 1e-12);
        s.u = 5.5;
        assert!((unemp_gap_taylor(&s, &p, R_STAR, PI_STAR, 4.5) - 3.85).abs() < 1e-12);
    }

    #[test]
    fn unemp_gap_zero_coefficients() {
        let p = RuleParams {
            u_pi_coeff: 0.0,
            u_gap_coeff: 0.0,
            a_pi: 0.0,
            ..RuleParams::default()
        };
        let mut s = state(2.0, 0.0);
        s.u = 7.0;
        assert_eq!(unemp_gap_taylor(&s, &p, R_STAR, PI_STAR, 4.5), 3.0);
    }

    #[test]
    fn modified_rule_floors_at_zero() {
        let p = RuleParams::aggressive();
        // both gaps zero: same as the standard rule
        assert_eq!(modified_taylor(&state(2.0, 0.0), &p, R_STAR, PI_STAR), 3.0);
        // deep slump: floor binds
        assert_eq!(modified_taylor(&state(0.0, -3.0), &p, R_STAR, PI_STAR), 0.0);
        // boom: aggressive response
        assert_eq!(modified_taylor(&state(3.0, 1.0), &p, R_STAR, PI_STAR), 8.0);
        assert_eq!(
            taylor(&state(3.0, 1.0), &RuleParams::default(), R_STAR, PI_STAR),
            5.0
        );
    }

    fn obs(unrate: f64, wage: f64) -> ThresholdObs {
        ThresholdObs {
            unrate,
            wage,
            epop: 77.0,
            projected_pce: 1.8,
        }
    }

    fn wage_cfg() -> ThresholdConfig {
        ThresholdConfig {
            unrate_thresh: 6.5,
            inflation_side: InflationSide::EciWage(3.5),
            active: true,
        }
    }

    #[test]
    fn neither_threshold_crossed() {
        let ts = update_thresholds(&ThresholdState::default(), &obs(7.0, 3.0), &wage_cfg());
        assert!(!ts.dmptmax);
        assert!(!ts.dmptr);
        assert!(ts.raw_unrate_above);
    }

    #[test]
    fn unrate_crossing_latches() {
        let cfg = wage_cfg();
        let ts = update_thresholds(&ThresholdState::default(), &obs(6.4, 3.0), &cfg);
        assert!(ts.dmptunrate);
        assert!(ts.dmptr);
        // latch survives unemployment rising back above the threshold
        let later = update_thresholds(&ts, &obs(8.0, 3.0), &cfg);
        assert!(!later.dmptunrate);
        assert!(later.dmptr);
    }

    #[test]
    fn wage_crossing_latches() {
        let ts = update_thresholds(&ThresholdState::default(), &obs(8.0, 3.6), &wage_cfg());
        assert!(ts.dmpt_infl);
        assert!(ts.dmptr);
    }

    #[test]
    fn exact_tie_does_not_fire_inflation_side() {
        let ts = update_thresholds(&ThresholdState::default(), &obs(8.0, 3.5), &wage_cfg());
        assert!(!ts.dmpt_infl);
    }

    #[test]
    fn dmptmax_is_max_of_sides() {
        for (u, w) in [(6.0, 3.0), (8.0, 4.0), (6.0, 4.0), (8.0, 3.0)] {
            let ts = update_thresholds(&ThresholdState::default(), &obs(u, w), &wage_cfg());
            assert_eq!(ts.dmptmax, ts.dmptunrate || ts.dmpt_infl);
        }
    }

    #[test]
    fn effective_rate_hold_release_floor() {
        let cfg = wage_cfg();
        let held = ThresholdState::default();
        let released = ThresholdState {
            dmptr: true,
            ..held
        };
        assert_eq!(effective_rate(4.0, &held, &cfg, 0.125), 0.125);
        assert_eq!(effective_rate(4.0, &released, &cfg, 0.125), 4.0);
        assert_eq!(effective_rate(-1.0, &released, &cfg, 0.125), 0.125);
        // inactive guidance never holds
        let inactive = ThresholdConfig {
            active: false,
            ..cfg
        };
        assert_eq!(effective_rate(4.0, &held, &inactive, 0.125), 4.0);
    }

    #[test]
    fn liftoff_first_exceedance() {
        assert_eq!(liftoff_quarter(&[0.125, 0.125, 0.5, 1.0], 0.125), Some(2));
        assert_eq!(liftoff_quarter(&[0.125; 4], 0.125), None);
        assert_eq!(liftoff_quarter(&[0.5, 0.125], 0.125), Some(0));
    }

    #[test]
    fn liftoff_invariant_to_scaling_rule_path() {
        // when the hold is threshold-driven and the released rule rate is
        // already above the bound, scaling the rule path cannot move liftoff
        let cfg = wage_cfg();
        let elb = 0.125;
        let rule_path = [2.0, 2.5, 3.0, 3.5, 4.0];
        let release_at = 2;
        let effective = |scale: f64| -> Vec<f64> {
            let mut ts = ThresholdState::default();
            rule_path
                .iter()
                .enumerate()
                .map(|(t, &r)| {
                    if t == release_at {
                        ts = ThresholdState {
                            dmptr: true,
                            ..ts
                        };
                    }
                    effective_rate(r * scale, &ts, &cfg, elb)
                })
                .collect()
        };
        let base = liftoff_quarter(&effective(1.0), elb);
        for scale in [1.5, 2.0, 10.0] {
            assert_eq!(liftoff_quarter(&effective(scale), elb), base);
        }
    }
}
