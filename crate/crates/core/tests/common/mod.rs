#![allow(dead_code)]

use equipart::curve::{make_builtin_curve, ChordEvaluator, Curve, SemiMetric};
use equipart::fixtures::{random_open_polyline, random_weights, rng};
use equipart::Weights;
use rand::Rng;

pub struct Problem {
    pub seed: u64,
    pub ev: ChordEvaluator,
    pub n: usize,
    pub w: Weights,
}

/// Random open 2D polyline with 16 segments, `N` drawn from `ns`, random weights.
pub fn random_problem(seed: u64, ns: &[usize]) -> Problem {
    let mut r = rng(seed ^ 0x5eed);
    let n = ns[r.random_range(0..ns.len())];
    let w = random_weights(&mut r, n);
    let ev =
        ChordEvaluator::new(random_open_polyline(seed, 16, 2), SemiMetric::euclidean()).unwrap();
    Problem { seed, ev, n, w }
}

pub fn euclid(curve: &str) -> ChordEvaluator {
    ChordEvaluator::new(make_builtin_curve(curve).unwrap(), SemiMetric::euclidean()).unwrap()
}

pub fn with_metric(curve: Curve, metric: &str) -> ChordEvaluator {
    ChordEvaluator::new(curve, SemiMetric::parse(metric).unwrap()).unwrap()
}

/// Chords of breakpoints `t`, evaluated pointwise through the curve and metric.
pub fn direct_chords(ev: &ChordEvaluator, t: &[f64]) -> Vec<f64> {
    t.windows(2)
        .map(|p| {
            if p[0] == p[1] {
                0.0
            } else {
                let a = ev.curve().eval(p[0]).unwrap();
                let b = ev.curve().eval(p[1]).unwrap();
                ev.metric().distance(a.coords(), b.coords())
            }
        })
        .collect()
}

/// `‖c/Σc − α‖∞`, `None` for a zero chord vector.
pub fn direct_residual(chords: &[f64], alpha: &[f64]) -> Option<f64> {
    let sum: f64 = chords.iter().sum();
    if sum <= 0.0 {
        return None;
    }
    Some(
        chords
            .iter()
            .zip(alpha)
            .map(|(c, a)| (c / sum - a).abs())
            .fold(0.0, f64::max),
    )
}

/// Local Lipschitz constant of the residual in `t` (sup norm) near a partition
/// with chord sum `sum`.
pub fn residual_lipschitz(ev: &ChordEvaluator, n: usize, sum: f64) -> f64 {
    (2 * n + 2) as f64 * ev.lipschitz_bound() / sum
}
