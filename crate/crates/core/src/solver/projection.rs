//! Damped fixed-point iteration on the ordered tuple.
//!
//! With normalised chords `g = G(F(t))`, cumulative targets `sᵢ = Σ_{j≤i} αⱼ`
//! and cumulative shares `ŝᵢ = Σ_{j≤i} gⱼ`, each interior breakpoint moves by
//! `η·(sᵢ − ŝᵢ)·(t_{i+1} − t_{i−1})`; the tuple is then re-sorted and clamped.

use super::{normalized_residual, Partition, Solution, SolveMethod, SolveOptions, Status, Weights};
use crate::curve::ChordEvaluator;
use crate::error::{Error, Result};
use crate::simplex::{chords_between, OrderedTuple};

pub(crate) struct Iterated {
    pub breakpoints: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    pub status: Status,
}

pub(crate) fn iterate(
    ev: &ChordEvaluator,
    w: &Weights,
    mut t: Vec<f64>,
    tol: f64,
    max_iter: usize,
    damping: f64,
) -> Iterated {
    let alpha = w.alpha();
    let n = alpha.len();
    let mut best = (f64::INFINITY, t.clone());
    for iteration in 0..=max_iter {
        let chords = chords_between(ev, &t);
        let Some(r) = normalized_residual(&chords, alpha) else {
            break;
        };
        if r < best.0 {
            best = (r, t.clone());
        }
        if r <= tol {
            return Iterated {
                breakpoints: t,
                iterations: iteration,
                residual: r,
                status: Status::Converged,
            };
        }
        if iteration == max_iter {
            break;
        }
        let sum: f64 = chords.iter().sum();
        let mut next = t.clone();
        let (mut target, mut share) = (0.0, 0.0);
        for i in 1..n {
            target += alpha[i - 1];
            share += chords[i - 1] / sum;
            next[i] = t[i] + damping * (target - share) * (t[i + 1] - t[i - 1]);
        }
        let inner = &mut next[1..n];
        for x in inner.iter_mut() {
            *x = x.clamp(0.0, 1.0);
        }
        inner.sort_by(f64::total_cmp);
        t = next;
    }
    Iterated {
        breakpoints: best.1,
        iterations: max_iter,
        residual: best.0,
        status: Status::MaxIterations,
    }
}

pub fn solve_projection_iteration(
    ev: &ChordEvaluator,
    w: &Weights,
    opts: &SolveOptions,
) -> Result<Solution> {
    let n = w.len();
    let start = match &opts.start {
        Some(t) if t.n_chords() != n => {
            return Err(Error::domain(format!(
                "start tuple has {} chords, expected {n}",
                t.n_chords()
            )))
        }
        Some(t) => t.clone(),
        None => OrderedTuple::uniform(n),
    };
    let out = iterate(
        ev,
        w,
        start.breakpoints(),
        opts.tol,
        opts.max_iter,
        opts.damping,
    );
    Ok(Solution::new(
        Partition::from_valid(ev, out.breakpoints),
        Some(SolveMethod::ProjectionIteration),
        out.iterations,
        out.residual,
        out.status,
    ))
}
