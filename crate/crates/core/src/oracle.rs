//! Brute-force numerics used to audit the closed forms: grid minimization, central
//! differences and sampled minima. Nothing here shares code paths with the formulas it
//! checks beyond evaluating the objective.

use serde::Serialize;

use crate::error::{GeomError, Result};

pub const DEFAULT_GRID: usize = 101;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Relative step for [`fd_gradient`] when the caller has no better choice.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    /// Points per axis on every stage; odd so the previous best is re-sampled.
    pub grid: usize,
    pub budget: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { grid: DEFAULT_GRID, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizeReport {
    pub argmin: (f64, f64),
    pub value: f64,
    pub grid_step_final: f64,
    pub evaluations: u64,
    /// Best value after each refinement stage.
    pub stage_values: Vec<f64>,
}

pub fn minimize_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    center: (f64, f64),
    radius: f64,
    resolution: f64,
) -> Result<MinimizeReport> {
    minimize_2d_with(f, center, radius, resolution, MinimizeOptions::default())
}

/// Grid search over the square of half-width `radius`, re-gridding a window ten times
/// smaller around the incumbent until the spacing is at most `resolution`.
pub fn minimize_2d_with<F: Fn(f64, f64) -> f64>(
    f: F,
    center: (f64, f64),
    radius: f64,
    resolution: f64,
    opts: MinimizeOptions,
) -> Result<MinimizeReport> {
    if !(radius > 0.0 && resolution > 0.0) {
        return Err(GeomError::DomainError(format!(
            "radius {radius} and resolution {resolution} must be positive"
        )));
    }
    let n = opts.grid.max(3) | 1;
    let half = (n / 2) as f64;
    let mut best = center;
    let mut best_val = f64::INFINITY;
    let mut half_width = radius;
    let mut evaluations = 0u64;
    let mut stage_values = Vec::new();
    loop {
        let step = half_width / half;
        let (cs, ct) = best;
        for a in 0..n {
            let s = cs + (a as f64 - half) * step;
            for b in 0..n {
                let t = ct + (b as f64 - half) * step;
                evaluations += 1;
                if evaluations > opts.budget {
                    return Err(GeomError::BudgetExceeded(opts.budget));
                }
                let v = f(s, t);
                if v < best_val {
                    best_val = v;
                    best = (s, t);
                }
            }
        }
        stage_values.push(best_val);
        if step <= resolution {
            return Ok(MinimizeReport {
                argmin: best,
                value: best_val,
                grid_step_final: step,
                evaluations,
                stage_values,
            });
        }
        half_width /= 10.0;
    }
}

/// Central differences with step `h` in each coordinate.
pub fn fd_gradient<F: Fn(f64, f64) -> f64>(f: F, point: (f64, f64), h: f64) -> (f64, f64) {
    let (s, t) = point;
    ((f(s + h, t) - f(s - h, t)) / (2.0 * h), (f(s, t + h) - f(s, t - h)) / (2.0 * h))
}

/// The default step `1e-6 · max(1, |s|, |t|)`.
pub fn fd_step(point: (f64, f64)) -> f64 {
    DEFAULT_FD_STEP * point.0.abs().max(point.1.abs()).max(1.0)
}

/// Smallest value of `target` over `count` draws from `sampler`.
pub fn sample_min_distance<P, S, T>(mut sampler: S, target: T, count: usize) -> f64
where
    S: FnMut() -> P,
    T: Fn(&P) -> f64,
{
    (0..count).map(|_| target(&sampler())).fold(f64::INFINITY, f64::min)
}
