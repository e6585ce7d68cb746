//! Optimal-control policy: choose the rate path minimizing a discounted
//! quadratic loss in the inflation gap, unemployment gap, and rate changes,
//! subject to the model dynamics and the effective lower bound.
//!
//! Agents have perfect foresight of the chosen path: rate expectations equal
//! the path itself (so the 10-year yield reflects the announced policy) and
//! inflation expectations stay at the long-run anchor.
//!
//! The solver is projected coordinate descent with multi-start; a
//! brute-force grid enumerator serves as its oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    simulate, ExpectationsMode, FiscalRule, ModelParams, ModelState, Shock,
};
use crate::policy;

/// Loss weights and targets.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OcWeights {
    pub w_pi: f64,
    pub w_u: f64,
    pub w_r: f64,
    pub discount: f64,
    pub pi_target: f64,
    pub u_target: f64,
}

impl OcWeights {
    pub fn new(w_pi: f64, w_u: f64, w_r: f64, u_target: f64) -> Self {
        OcWeights {
            w_pi,
            w_u,
            w_r,
            discount: 0.99,
            pi_target: 2.0,
            u_target,
        }
    }

    /// Rate-smoothing preset: equal gap weights, heavy penalty on changes.
    pub fn smoothing_preset(u_target: f64) -> Self {
        OcWeights::new(1.0, 1.0, 10.0, u_target)
    }

    /// Inflation-focused preset: heavy weight on the inflation gap.
    pub fn inflation_preset(u_target: f64) -> Self {
        OcWeights::new(10.0, 5.0, 5.0, u_target)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("w_pi", self.w_pi), ("w_u", self.w_u), ("w_r", self.w_r)] {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::Config(format!("{name} = {v} must be >= 0")));
            }
        }
        if self.w_pi + self.w_u + self.w_r <= 0.0 {
            return Err(Error::Config("at least one loss weight must be positive".into()));
        }
        if self.discount <= 0.0 || self.discount > 1.0 {
            return Err(Error::Config(format!(
                "discount = {} outside (0, 1]",
                self.discount
            )));
        }
        Ok(())
    }
}

/// Discounted quadratic loss over a trajectory. `states[t]` is the state
/// produced by `rates[t]`; the first rate change is measured against
/// `r_initial`.
pub fn oc_loss(states: &[ModelState], rates: &[f64], r_initial: f64, w: &OcWeights) -> f64 {
    debug_assert_eq!(states.len(), rates.len());
    let mut loss = 0.0;
    let mut disc = 1.0;
    let mut prev_r = r_initial;
    for (s, &r) in states.iter().zip(rates) {
        let dpi = s.pi - w.pi_target;
        let du = s.u - w.u_target;
        let dr = r - prev_r;
        loss += disc * (w.w_pi * dpi * dpi + w.w_u * du * du + w.w_r * dr * dr);
        disc *= w.discount;
        prev_r = r;
    }
    loss
}

/// The fixed ingredients of one optimal-control problem: everything except
/// the rate path.
#[derive(Debug, Clone)]
pub struct OcProblem<'a> {
    pub initial: &'a ModelState,
    pub params: &'a ModelParams,
    pub shocks: &'a [Shock],
    pub fiscal: FiscalRule,
    /// Number of rate decisions (the trajectory has one more quarter, the
    /// given initial one).
    pub t_periods: usize,
    pub elb: f64,
}

impl<'a> OcProblem<'a> {
    /// Simulate the path under perfect foresight; returns the decided states
    /// (one per rate) and the loss.
    pub fn evaluate(&self, path: &[f64], w: &OcWeights) -> Result<(f64, Vec<ModelState>)> {
        let mode = ExpectationsMode::PerfectForesight(path.to_vec());
        let traj = simulate(
            self.initial,
            self.params,
            &mode,
            self.shocks,
            self.fiscal,
            self.t_periods + 1,
            |ctx| path[ctx.t - 1],
        )?;
        let states = traj[1..].to_vec();
        let loss = oc_loss(&states, path, self.initial.r, w);
        Ok((loss, states))
    }
}

/// A solved rate path.
#[derive(Debug, Clone)]
pub struct OcSolution {
    pub path: Vec<f64>,
    pub loss: f64,
    pub states: Vec<ModelState>,
    pub iterations: usize,
}

const LOSS_TOL: f64 = 1e-8;
const MAX_ITERATIONS: usize = 10_000;
const PENALTY_WEIGHT: f64 = 1_000.0;
const PROBE_STEP: f64 = 0.25;

/// Exterior penalty for rates below the bound, used in the first descent
/// phase before switching to pure projection.
fn bound_penalty(path: &[f64], elb: f64) -> f64 {
    path.iter()
        .map(|&r| {
            let v = (elb - r).max(0.0);
            v * v
        })
        .sum::<f64>()
        * PENALTY_WEIGHT
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Pick the better of two candidates: lower loss, ties broken toward the
/// lexicographically smaller (lower-rate) path.
fn better(loss: f64, path: &[f64], best_loss: f64, best_path: &[f64]) -> bool {
    if loss < best_loss - 1e-12 {
        return true;
    }
    if loss <= best_loss + 1e-12 {
        return lex_less(path, best_path);
    }
    false
}

/// Minimize the loss over rate paths of length `t_periods` with every rate
/// at or above the bound. `grid`, when given, restricts rates to the grid
/// values (the form the brute-force oracle can check exactly).
pub fn solve_oc(problem: &OcProblem<'_>, w: &OcWeights, grid: Option<&[f64]>) -> Result<OcSolution> {
    w.validate()?;
    if problem.t_periods < 1 {
        return Err(Error::InvalidArgument("horizon must be >= 1".into()));
    }
    if let Some(g) = grid {
        if g.is_empty() {
            return Err(Error::InvalidArgument("rate grid is empty".into()));
        }
    }

    let starts = build_starts(problem, w, grid)?;
    let mut best: Option<OcSolution> = None;
    let mut converged_any = false;
    let mut total_iterations = 0;

    for start in starts {
        let (solution, converged) = match grid {
            None => descend_continuous(problem, w, start)?,
            Some(g) => descend_grid(problem, w, start, g)?,
        };
        total_iterations += solution.iterations;
        converged_any |= converged;
        best = Some(match best {
            None => solution,
            Some(cur) => {
                if better(solution.loss, &solution.path, cur.loss, &cur.path) {
                    solution
                } else {
                    cur
                }
            }
        });
    }
    let mut best = best.expect("at least one start");
    best.iterations = total_iterations;
    if !converged_any {
        return Err(Error::NonConvergence {
            iterations: total_iterations,
            best_loss: best.loss,
        });
    }
    Ok(best)
}

fn build_starts(
    problem: &OcProblem<'_>,
    _w: &OcWeights,
    grid: Option<&[f64]>,
) -> Result<Vec<Vec<f64>>> {
    let t = problem.t_periods;
    let p = problem.params;
    let neutral = p.r_star + p.pi_star;

    // rule-based warm start: the bounded standard rule under anchored
    // expectations
    let rule_params = policy::RuleParams {
        elb: problem.elb,
        ..policy::RuleParams::default()
    };
    let taylor_traj = simulate(
        problem.initial,
        p,
        &ExpectationsMode::PerfectForesight(Vec::new()),
        problem.shocks,
        problem.fiscal,
        t + 1,
        |ctx| policy::taylor(ctx.state, &rule_params, p.r_star, p.pi_star).max(problem.elb),
    )?;
    let taylor_path: Vec<f64> = taylor_traj[1..].iter().map(|s| s.r).collect();

    let mut starts = vec![
        vec![problem.elb; t],
        taylor_path.clone(),
        vec![neutral; t],
        (0..t)
            .map(|i| (neutral + if i % 2 == 0 { 0.5 } else { -0.5 }).max(problem.elb))
            .collect(),
        (0..t)
            .map(|i| (problem.elb + 0.25 * i as f64).min(neutral + 1.0))
            .collect(),
    ];

    if let Some(g) = grid {
        let snap = |v: f64| {
            *g.iter()
                .min_by(|a, b| {
                    let da = (*a - v).abs();
                    let db = (*b - v).abs();
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap()
        };
        let mut gridded: Vec<Vec<f64>> = starts
            .iter()
            .map(|path| path.iter().map(|&v| snap(v)).collect())
            .collect();
        for &v in g {
            gridded.push(vec![v; t]);
        }
        gridded.dedup();
        starts = gridded;
    }
    Ok(starts)
}

/// Coordinate descent with a quadratic probe per coordinate. The loss is an
/// exact quadratic in each rate (the model is linear), so the parabola
/// vertex is the exact 1-d minimizer.
fn descend_continuous(
    problem: &OcProblem<'_>,
    w: &OcWeights,
    mut path: Vec<f64>,
) -> Result<(OcSolution, bool)> {
    let t = problem.t_periods;
    let eval = |p: &[f64], penalty: bool| -> Result<f64> {
        let (loss, _) = problem.evaluate(p, w)?;
        Ok(loss + if penalty { bound_penalty(p, problem.elb) } else { 0.0 })
    };

    let mut iterations = 0;
    let mut converged = false;
    // phase 1: exterior penalty, unprojected moves; phase 2: projection
    for phase in 0..2 {
        let penalty = phase == 0;
        if !penalty {
            for r in &mut path {
                *r = r.max(problem.elb);
            }
        }
        let mut prev_loss = eval(&path, penalty)?;
        let max_sweeps = if penalty { 20 } else { MAX_ITERATIONS / t.max(1) + 1 };
        for _ in 0..max_sweeps {
            let mut current = prev_loss;
            for i in 0..t {
                iterations += 1;
                if iterations > MAX_ITERATIONS {
                    break;
                }
                let r0 = path[i];
                let h = PROBE_STEP;
                path[i] = r0 + h;
                let lp = eval(&path, penalty)?;
                path[i] = r0 - h;
                let lm = eval(&path, penalty)?;
                path[i] = r0;
                let curvature = lp - 2.0 * current + lm;
                if curvature <= 1e-14 {
                    continue;
                }
                let mut target = r0 - 0.5 * h * (lp - lm) / curvature;
                if !penalty {
                    target = target.max(problem.elb);
                }
                path[i] = target;
                let lt = eval(&path, penalty)?;
                if lt <= current {
                    current = lt;
                } else {
                    path[i] = r0;
                }
            }
            let done = (prev_loss - current).abs() < LOSS_TOL;
            prev_loss = current;
            if done {
                if !penalty {
                    converged = true;
                }
                break;
            }
            if iterations > MAX_ITERATIONS {
                break;
            }
        }
        // phase 1 ends as soon as the path is feasible enough to project
    }

    let (loss, states) = problem.evaluate(&path, w)?;
    Ok((
        OcSolution {
            path,
            loss,
            states,
            iterations,
        },
        converged,
    ))
}

/// Exact coordinate descent on the grid, followed by pairwise refinement
/// over adjacent coordinates to escape single-coordinate stalls.
fn descend_grid(
    problem: &OcProblem<'_>,
    w: &OcWeights,
    mut path: Vec<f64>,
    grid: &[f64],
) -> Result<(OcSolution, bool)> {
    let t = problem.t_periods;
    let mut iterations = 0;
    let mut current = problem.evaluate(&path, w)?.0;

    loop {
        let mut improved = false;
        // single-coordinate exact minimization
        for i in 0..t {
            iterations += 1;
            let r0 = path[i];
            let mut best_v = r0;
            let mut best_l = current;
            for &v in grid {
                if v == r0 {
                    continue;
                }
                path[i] = v;
                let l = problem.evaluate(&path, w)?.0;
                if l < best_l - 1e-15 || (l <= best_l + 1e-15 && v < best_v) {
                    best_l = l;
                    best_v = v;
                }
            }
            path[i] = best_v;
            if best_v != r0 {
                improved = true;
            }
            current = best_l;
        }
        // adjacent-pair moves
        for i in 0..t.saturating_sub(1) {
            iterations += 1;
            let (a0, b0) = (path[i], path[i + 1]);
            let mut best = (a0, b0, current);
            for &a in grid {
                for &b in grid {
                    if a == a0 && b == b0 {
                        continue;
                    }
                    path[i] = a;
                    path[i + 1] = b;
                    let l = problem.evaluate(&path, w)?.0;
                    if l < best.2 - 1e-15 {
                        best = (a, b, l);
                    }
                }
            }
            path[i] = best.0;
            path[i + 1] = best.1;
            if best.2 < current - 1e-15 {
                current = best.2;
                improved = true;
            }
        }
        if !improved || iterations > MAX_ITERATIONS {
            break;
        }
    }

    let (loss, states) = problem.evaluate(&path, w)?;
    Ok((
        OcSolution {
            path,
            loss,
            states,
            iterations,
        },
        true,
    ))
}

/// Exact argmin over every grid path, enumerated in lexicographic order so
/// the first minimum found is also the lexicographically smallest.
pub fn brute_force_oc(
    problem: &OcProblem<'_>,
    w: &OcWeights,
    grid: &[f64],
) -> Result<OcSolution> {
    w.validate()?;
    let t = problem.t_periods;
    if grid.is_empty() || t == 0 {
        return Err(Error::InvalidArgument("empty grid or horizon".into()));
    }
    let count = (grid.len() as f64).powi(t as i32);
    if count > 1e7 {
        return Err(Error::SearchSpaceTooLarge(count));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut indices = vec![0usize; t];
    let mut path: Vec<f64> = vec![sorted[0]; t];
    let mut best_path = path.clone();
    let mut best_loss = f64::INFINITY;
    let mut evaluated = 0usize;
    loop {
        for (i, &gi) in indices.iter().enumerate() {
            path[i] = sorted[gi];
        }
        let (loss, _) = problem.evaluate(&path, w)?;
        evaluated += 1;
        if loss < best_loss {
            best_loss = loss;
            best_path.copy_from_slice(&path);
        }
        // odometer increment, last coordinate fastest so enumeration is
        // lexicographic in the path
        let mut pos = t;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < sorted.len() {
                break;
            }
            indices[pos] = 0;
        }
        if pos == 0 && indices[0] == 0 {
            break;
        }
    }
    let (loss, states) = problem.evaluate(&best_path, w)?;
    Ok(OcSolution {
        path: best_path,
        loss,
        states,
        iterations: evaluated,
    })
}
