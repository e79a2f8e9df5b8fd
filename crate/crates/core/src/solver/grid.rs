//! Grid refinement: exhaustive search on a coarse grid, then a local polish.
//! The polish runs projection iteration first and falls back to a damped
//! Newton iteration on the normalised chord equations.

use nalgebra::{DMatrix, DVector};

use super::projection::iterate;
use super::{normalized_residual, Partition, Solution, SolveMethod, SolveOptions, Status, Weights};
use crate::curve::ChordEvaluator;
use crate::error::Result;
use crate::oracle::{brute_force_min_residual, grid_local_minima, largest_grid_within_budget};
use crate::simplex::chords_between;

const NEWTON_MAX_ITER: usize = 100;
const FD_STEP: f64 = 1e-7;
const MAX_STEP: f64 = 0.05;
const LOCAL_MIN_GRID: usize = 101;
const LOCAL_MIN_STARTS: usize = 16;

pub fn solve_grid_refine(
    ev: &ChordEvaluator,
    w: &Weights,
    opts: &SolveOptions,
) -> Result<Solution> {
    let n = w.len();
    let method = Some(SolveMethod::GridRefine);
    let m = largest_grid_within_budget(n, opts.polish_grid, opts.oracle.budget);
    let coarse = brute_force_min_residual(ev, n, w, m, &opts.oracle)?;
    let start = coarse.t_star.breakpoints();
    if coarse.degenerate {
        let p = Partition::from_valid(ev, start);
        return Ok(Solution::new(
            p,
            method,
            0,
            f64::INFINITY,
            Status::MaxIterations,
        ));
    }
    if coarse.residual_star <= opts.tol {
        let p = Partition::from_valid(ev, start);
        return Ok(Solution::new(
            p,
            method,
            0,
            coarse.residual_star,
            Status::Converged,
        ));
    }

    let projected = iterate(ev, w, start.clone(), opts.tol, opts.max_iter, opts.damping);
    let mut iterations = projected.iterations;
    if projected.status == Status::Converged {
        let p = Partition::from_valid(ev, projected.breakpoints);
        return Ok(Solution::new(
            p,
            method,
            iterations,
            projected.residual,
            Status::Converged,
        ));
    }

    let mut starts = vec![start, projected.breakpoints.clone()];
    let local_m = largest_grid_within_budget(n, LOCAL_MIN_GRID, opts.oracle.budget / 16);
    starts.extend(
        grid_local_minima(ev, w, local_m, LOCAL_MIN_STARTS, opts.oracle.exec)
            .into_iter()
            .map(|(_, t)| t),
    );
    let mut best = (projected.breakpoints, projected.residual);
    for t0 in starts {
        let (t, r, it) = newton_polish(ev, w, t0, opts.tol);
        iterations += it;
        if r < best.1 {
            best = (t, r);
        }
        if best.1 <= opts.tol {
            break;
        }
    }
    let status = if best.1 <= opts.tol {
        Status::Converged
    } else {
        Status::MaxIterations
    };
    Ok(Solution::new(
        Partition::from_valid(ev, best.0),
        method,
        iterations,
        best.1,
        status,
    ))
}

fn sup_residual(ev: &ChordEvaluator, alpha: &[f64], t: &[f64]) -> f64 {
    normalized_residual(&chords_between(ev, t), alpha).unwrap_or(f64::INFINITY)
}

/// First `N − 1` components of `G(F(t)) − α`; the last one follows from both
/// vectors summing to one.
fn equations(ev: &ChordEvaluator, alpha: &[f64], t: &[f64]) -> Option<DVector<f64>> {
    let chords = chords_between(ev, t);
    let sum: f64 = chords.iter().sum();
    if !(sum > 0.0) {
        return None;
    }
    let n = alpha.len();
    Some(DVector::from_iterator(
        n - 1,
        chords[..n - 1].iter().zip(alpha).map(|(c, a)| c / sum - a),
    ))
}

fn normalize_tuple(t: &mut [f64]) {
    let n = t.len() - 1;
    let inner = &mut t[1..n];
    for x in inner.iter_mut() {
        *x = x.clamp(0.0, 1.0);
    }
    inner.sort_by(f64::total_cmp);
}

/// Damped Newton on the normalised chord equations with a capped step and
/// backtracking on `‖f‖₂²`. Returns `(breakpoints, residual, iterations)` for
/// the best iterate seen.
fn newton_polish(
    ev: &ChordEvaluator,
    w: &Weights,
    mut t: Vec<f64>,
    tol: f64,
) -> (Vec<f64>, f64, usize) {
    let alpha = w.alpha();
    let k = alpha.len() - 1;
    let merit = |t: &[f64]| equations(ev, alpha, t).map(|f| f.norm_squared());
    let mut best = (t.clone(), sup_residual(ev, alpha, &t));
    let Some(mut phi) = merit(&t) else {
        return (best.0, best.1, 0);
    };
    let mut iterations = 0;
    while iterations < NEWTON_MAX_ITER && best.1 > tol {
        iterations += 1;
        let Some(f0) = equations(ev, alpha, &t) else {
            break;
        };
        let mut jac = DMatrix::<f64>::zeros(k, k);
        for j in 0..k {
            let x = t[j + 1];
            let (lo, hi) = ((x - FD_STEP).max(0.0), (x + FD_STEP).min(1.0));
            let mut tp = t.clone();
            tp[j + 1] = hi;
            let mut tm = t.clone();
            tm[j + 1] = lo;
            let (Some(fp), Some(fm)) = (equations(ev, alpha, &tp), equations(ev, alpha, &tm))
            else {
                return (best.0, best.1, iterations);
            };
            jac.set_column(j, &((fp - fm) / (hi - lo)));
        }
        let Some(mut step) = jac.lu().solve(&(-&f0)) else {
            break;
        };
        let len = step.amax();
        if !len.is_finite() {
            break;
        }
        if len > MAX_STEP {
            step *= MAX_STEP / len;
        }
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut cand = t.clone();
            for j in 0..k {
                cand[j + 1] += lambda * step[j];
            }
            normalize_tuple(&mut cand);
            if let Some(pc) = merit(&cand) {
                if pc < phi {
                    phi = pc;
                    t = cand;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
        let r = sup_residual(ev, alpha, &t);
        if r < best.1 {
            best = (t.clone(), r);
        }
    }
    (best.0, best.1, iterations)
}
