//! Marching: consume the curve left to right, placing each breakpoint at the
//! first parameter whose chord reaches `αᵢ·c`, then bisect on the chord scale
//! `c` until the leftover final chord matches `α_N·c`.

use super::{
    normalized_residual, Best, Partition, Solution, SolveMethod, SolveOptions, Status, Weights,
};
use crate::curve::ChordEvaluator;
use crate::error::{Error, Result};

const REFINE_STEPS: usize = 60;

/// Mismatch of the final chord after marching with scale `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Overshoot {
    /// `D(t_{N−1}, 1) − α_N·c`: positive when `c` is too small, negative when
    /// it is too large.
    Final(f64),
    /// No crossing existed for breakpoint `step`; the curve ran out before the
    /// chord reached its target, which places `c` on the too-large side.
    Truncated { step: usize },
}

impl Overshoot {
    /// Signed value used for bracketing; truncation counts as `−∞`.
    pub fn signed(self) -> f64 {
        match self {
            Overshoot::Final(v) => v,
            Overshoot::Truncated { .. } => f64::NEG_INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct March {
    /// `(t₀, …, t_{N−1})`, shorter when truncated.
    pub chain: Vec<f64>,
    pub overshoot: Overshoot,
}

impl March {
    /// Full breakpoint list; a truncated chain is padded with 1.
    pub fn breakpoints(&self, n: usize) -> Vec<f64> {
        let mut b = self.chain.clone();
        b.resize(n, 1.0);
        b.push(1.0);
        b
    }
}

/// Smallest `t ≥ a` with `D(a, t) = target`: first sign change of
/// `D(a, ·) − target` over `step_m` uniform samples of `[a, 1]`, refined by
/// bisection.
fn first_crossing(ev: &ChordEvaluator, a: f64, target: f64, step_m: usize) -> Option<f64> {
    if a >= 1.0 {
        return None;
    }
    let f = |s: f64| ev.chord_unchecked(a, s) - target;
    let last = step_m - 1;
    let mut prev = a;
    for j in 1..=last {
        let s = if j == last {
            1.0
        } else {
            a + (1.0 - a) * (j as f64 / last as f64)
        };
        let fs = f(s);
        if fs >= 0.0 {
            if fs == 0.0 {
                return Some(s);
            }
            let (mut lo, mut hi) = (prev, s);
            let (mut flo, mut fhi) = (f(lo), fs);
            for _ in 0..REFINE_STEPS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid);
                if fm < 0.0 {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                    fhi = fm;
                }
            }
            return Some(if -flo < fhi { lo } else { hi });
        }
        prev = s;
    }
    None
}

pub fn march(ev: &ChordEvaluator, w: &Weights, c: f64, step_m: usize) -> Result<March> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain("chord scale must be positive"));
    }
    if step_m < 2 {
        return Err(Error::domain("step_m must be at least 2"));
    }
    let alpha = w.alpha();
    let n = alpha.len();
    let mut chain = Vec::with_capacity(n);
    chain.push(0.0);
    for (i, a) in alpha.iter().enumerate().take(n - 1) {
        let prev = *chain.last().unwrap();
        match first_crossing(ev, prev, a * c, step_m) {
            Some(t) => chain.push(t),
            None => {
                return Ok(March {
                    chain,
                    overshoot: Overshoot::Truncated { step: i + 1 },
                })
            }
        }
    }
    let last = *chain.last().unwrap();
    let overshoot = Overshoot::Final(ev.chord_unchecked(last, 1.0) - alpha[n - 1] * c);
    Ok(March { chain, overshoot })
}

/// Bisection on the chord scale `c`.
///
/// The bracket `overshoot(c_lo) > 0 > overshoot(c_hi)` is found by doubling or
/// halving from `D(0,1)`. Without a sign change the status is
/// `BracketingFailed`; if bisection closes onto a jump of the overshoot
/// instead of a root the status is `MaxIterations`.
pub fn solve_marching_bisection(
    ev: &ChordEvaluator,
    w: &Weights,
    opts: &SolveOptions,
) -> Result<Solution> {
    let n = w.len();
    let method = SolveMethod::MarchingBisection;
    let mut best = Best::new();
    let evaluate = |c: f64, best: &mut Best| -> Result<(f64, Option<f64>)> {
        let m = march(ev, w, c, opts.step_m)?;
        let p = Partition::from_valid(ev, m.breakpoints(n));
        let r = normalized_residual(p.chords(), w.alpha());
        best.offer(&p, r);
        Ok((m.overshoot.signed(), r))
    };
    let converged = |r: Option<f64>| r.is_some_and(|r| r <= opts.tol);

    let mut c0 = opts
        .initial_scale
        .unwrap_or_else(|| ev.chord_unchecked(0.0, 1.0));
    if !(c0 > 0.0) {
        let last = opts.step_m - 1;
        c0 = (1..=last)
            .map(|j| ev.chord_unchecked(0.0, j as f64 / last as f64))
            .fold(0.0, f64::max);
    }
    if !(c0 > 0.0) {
        return Ok(best.into_solution(ev, method, 0, Status::BracketingFailed));
    }

    let (o0, r0) = evaluate(c0, &mut best)?;
    if converged(r0) {
        return Ok(best.into_solution(ev, method, 0, Status::Converged));
    }
    let (mut lo, mut hi) = (c0, c0);
    let mut bracketed = false;
    if o0 > 0.0 {
        for _ in 0..opts.max_sweeps {
            let c = hi * 2.0;
            let (o, r) = evaluate(c, &mut best)?;
            if converged(r) {
                return Ok(best.into_solution(ev, method, 0, Status::Converged));
            }
            if o < 0.0 {
                hi = c;
                bracketed = true;
                break;
            }
            lo = c;
            hi = c;
        }
    } else if o0 < 0.0 {
        for _ in 0..opts.max_sweeps {
            let c = lo * 0.5;
            let (o, r) = evaluate(c, &mut best)?;
            if converged(r) {
                return Ok(best.into_solution(ev, method, 0, Status::Converged));
            }
            if o > 0.0 {
                lo = c;
                bracketed = true;
                break;
            }
            lo = c;
            hi = c;
        }
    }
    if !bracketed {
        return Ok(best.into_solution(ev, method, 0, Status::BracketingFailed));
    }

    let mut iterations = 0;
    while iterations < opts.max_bisections {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let (o, r) = evaluate(mid, &mut best)?;
        if converged(r) {
            return Ok(best.into_solution(ev, method, iterations, Status::Converged));
        }
        if o > 0.0 {
            lo = mid;
        } else if o < 0.0 {
            hi = mid;
        } else {
            break;
        }
    }
    Ok(best.into_solution(ev, method, iterations, Status::MaxIterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_builtin_curve, SemiMetric};

    fn segment() -> ChordEvaluator {
        ChordEvaluator::new(
            make_builtin_curve("segment((0,0),(1,0))").unwrap(),
            SemiMetric::euclidean(),
        )
        .unwrap()
    }

    fn assert_chain(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn march_examples_on_the_segment() {
        let ev = segment();
        let w = Weights::uniform(4);
        let m = march(&ev, &w, 1.0, 1024).unwrap();
        assert_chain(&m.chain, &[0.0, 0.25, 0.5, 0.75]);
        assert!(m.overshoot.signed().abs() < 1e-12);

        let m = march(&ev, &w, 0.8, 1024).unwrap();
        assert_chain(&m.chain, &[0.0, 0.2, 0.4, 0.6]);
        assert!((m.overshoot.signed() - 0.2).abs() < 1e-12);

        let m = march(&ev, &w, 1.2, 1024).unwrap();
        assert_chain(&m.chain, &[0.0, 0.3, 0.6, 0.9]);
        assert!((m.overshoot.signed() + 0.2).abs() < 1e-12);
    }

    #[test]
    fn running_out_of_curve_truncates() {
        let m = march(&segment(), &Weights::uniform(4), 2.0, 1024).unwrap();
        assert_eq!(m.overshoot, Overshoot::Truncated { step: 3 });
        assert_chain(&m.chain, &[0.0, 0.5, 1.0]);
        assert_eq!(
            m.breakpoints(4),
            vec![m.chain[0], m.chain[1], m.chain[2], 1.0, 1.0]
        );
        assert!(m.overshoot.signed() < 0.0);
    }

    #[test]
    fn march_argument_errors() {
        assert!(march(&segment(), &Weights::uniform(2), 0.0, 1024).is_err());
        assert!(march(&segment(), &Weights::uniform(2), 1.0, 1).is_err());
    }

    #[test]
    fn weighted_segment() {
        let w = Weights::new(vec![0.2, 0.3, 0.5]).unwrap();
        let opts = SolveOptions {
            tol: 1e-10,
            ..SolveOptions::default()
        };
        let s = solve_marching_bisection(&segment(), &w, &opts).unwrap();
        assert_eq!(s.report.status, Status::Converged);
        assert_chain(s.partition.t(), &[0.0, 0.2, 0.5, 1.0]);
        assert_chain(s.partition.chords(), &[0.2, 0.3, 0.5]);
    }

    #[test]
    fn bisection_from_a_poor_initial_scale() {
        let w = Weights::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        for c0 in [0.37, 3.1] {
            let opts = SolveOptions {
                tol: 1e-13,
                initial_scale: Some(c0),
                ..SolveOptions::default()
            };
            let s = solve_marching_bisection(&segment(), &w, &opts).unwrap();
            assert_eq!(s.report.status, Status::Converged, "c0 = {c0}");
            assert!(s.report.iterations <= 60, "{}", s.report.iterations);
            assert_chain(s.partition.t(), &[0.0, 0.1, 0.3, 0.6, 1.0]);
        }
    }
}
