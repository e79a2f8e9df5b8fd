//! Exhaustive grid minimisation of the residual.
//!
//! Every nondecreasing `(N−1)`-tuple on the grid `{k/(m−1)}` is evaluated; the
//! minimiser with the lexicographically smallest tuple wins ties. There is no
//! pruning. Chords between grid points are tabulated once, and the scan is
//! split over the first coordinate when running in parallel.

use crate::curve::ChordEvaluator;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::simplex::OrderedTuple;
use crate::solver::{normalized_residual, Weights};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Largest number of candidate tuples (and of tabulated chords) accepted.
    pub budget: u128,
    pub exec: Exec,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub t_star: OrderedTuple,
    /// `+∞` when every candidate has an all-zero chord vector.
    pub residual_star: f64,
    pub grid_m: usize,
    pub evaluated_count: u128,
    /// Every candidate was degenerate; `t_star` is then the first (in
    /// lexicographic order) degenerate tuple.
    pub degenerate: bool,
}

/// `k/(m−1)`; shared with every grid-based scan so grid values agree bit for
/// bit across nested grids and modules.
pub(crate) fn grid_point(k: usize, m: usize) -> f64 {
    k as f64 / (m - 1) as f64
}

/// Number of nondecreasing `(n−1)`-tuples over `m` grid values,
/// `C(m + n − 2, n − 1)`, saturating at `u128::MAX`.
pub fn candidate_count(n: usize, m: usize) -> u128 {
    let k = n.saturating_sub(1) as u128;
    let top = (m + n).saturating_sub(2) as u128;
    let mut c: u128 = 1;
    for i in 0..k {
        c = match c.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    c
}

fn table_size(m: usize) -> u128 {
    (m as u128) * (m as u128 + 1) / 2
}

/// Largest `m ≤ max_m` (at least 2) whose enumeration fits the budget.
pub fn largest_grid_within_budget(n: usize, max_m: usize, budget: u128) -> usize {
    let mut m = max_m.max(2);
    while m > 2 && (candidate_count(n, m) > budget || table_size(m) > budget) {
        m -= 1;
    }
    m
}

#[derive(Default)]
struct Best {
    found: Option<(f64, Vec<usize>)>,
    first_degenerate: Option<Vec<usize>>,
    count: u128,
}

impl Best {
    fn merge(self, other: Best) -> Best {
        let found = match (self.found, other.found) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if (b.0, &b.1) < (a.0, &a.1) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        };
        let first_degenerate = match (self.first_degenerate, other.first_degenerate) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        Best {
            found,
            first_degenerate,
            count: self.count + other.count,
        }
    }
}

pub fn brute_force_min_residual(
    ev: &ChordEvaluator,
    n: usize,
    w: &Weights,
    grid_m: usize,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    if n == 0 || w.len() != n {
        return Err(Error::domain(format!(
            "{} weights given for N = {n}",
            w.len()
        )));
    }
    if grid_m < 2 {
        return Err(Error::domain("oracle grid needs at least 2 points"));
    }
    let required = candidate_count(n, grid_m).max(table_size(grid_m));
    if required > opts.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let m = grid_m;
    let alpha = w.alpha();
    // rows[a][b - a] = D(a, b) for b ≥ a
    let rows: Vec<Vec<f64>> = opts.exec.map_collect(m, |a| {
        let ga = grid_point(a, m);
        (a..m)
            .map(|b| ev.chord_unchecked(ga, grid_point(b, m)))
            .collect()
    });
    let chord = |a: usize, b: usize| rows[a][b - a];

    let scan = |first: usize| -> Best {
        let mut best = Best::default();
        let mut chords = vec![0.0; n];
        let mut idx = vec![first; n - 1];
        loop {
            let mut prev = 0;
            for (c, &k) in chords.iter_mut().zip(&idx) {
                *c = chord(prev, k);
                prev = k;
            }
            chords[n - 1] = chord(prev, m - 1);
            best.count += 1;
            match normalized_residual(&chords, alpha) {
                Some(r) => {
                    if best.found.as_ref().is_none_or(|(br, _)| r < *br) {
                        best.found = Some((r, idx.clone()));
                    }
                }
                None => {
                    if best.first_degenerate.is_none() {
                        best.first_degenerate = Some(idx.clone());
                    }
                }
            }
            // odometer over positions 1.. in lexicographic order
            let Some(p) = (1..idx.len()).rev().find(|&p| idx[p] < m - 1) else {
                break;
            };
            idx[p] += 1;
            let v = idx[p];
            for q in &mut idx[p + 1..] {
                *q = v;
            }
        }
        best
    };

    let best = if n == 1 {
        scan(0)
    } else {
        opts.exec.map_reduce(m, Best::default, scan, Best::merge)
    };

    let to_tuple = |idx: &[usize]| {
        OrderedTuple::new(idx.iter().map(|&k| grid_point(k, m)).collect())
            .expect("grid tuple is ordered")
    };
    Ok(match best.found {
        Some((r, idx)) => OracleResult {
            t_star: to_tuple(&idx),
            residual_star: r,
            grid_m: m,
            evaluated_count: best.count,
            degenerate: false,
        },
        None => OracleResult {
            t_star: to_tuple(&best.first_degenerate.expect("at least one candidate")),
            residual_star: f64::INFINITY,
            grid_m: m,
            evaluated_count: best.count,
            degenerate: true,
        },
    })
}

/// Up to `k` discrete local minima of the residual on the density-`m` grid,
/// best first. A tuple is a local minimum when no tuple reachable by moving
/// one breakpoint by one grid step has a smaller residual (ties go to the
/// lexicographically smaller tuple).
pub(crate) fn grid_local_minima(
    ev: &ChordEvaluator,
    w: &Weights,
    m: usize,
    k: usize,
    exec: Exec,
) -> Vec<(f64, Vec<f64>)> {
    let n = w.len();
    if n < 2 || m < 2 {
        return Vec::new();
    }
    let alpha = w.alpha();
    let rows: Vec<Vec<f64>> = exec.map_collect(m, |a| {
        let ga = grid_point(a, m);
        (a..m)
            .map(|b| ev.chord_unchecked(ga, grid_point(b, m)))
            .collect()
    });
    let value = |idx: &[usize], chords: &mut [f64]| {
        let mut prev = 0;
        for (c, &k) in chords.iter_mut().zip(idx) {
            *c = rows[prev][k - prev];
            prev = k;
        }
        chords[n - 1] = rows[prev][m - 1 - prev];
        normalized_residual(chords, alpha)
    };
    let scan = |first: usize| -> Vec<(f64, Vec<usize>)> {
        let mut found = Vec::new();
        let mut chords = vec![0.0; n];
        let mut idx = vec![first; n - 1];
        let mut probe = idx.clone();
        loop {
            if let Some(r) = value(&idx, &mut chords) {
                let mut minimal = true;
                'moves: for p in 0..idx.len() {
                    for up in [false, true] {
                        let lo = if p == 0 { 0 } else { idx[p - 1] };
                        let hi = if p + 1 == idx.len() {
                            m - 1
                        } else {
                            idx[p + 1]
                        };
                        let v = if up {
                            idx[p] + 1
                        } else {
                            idx[p].wrapping_sub(1)
                        };
                        if v < lo || v > hi {
                            continue;
                        }
                        probe.copy_from_slice(&idx);
                        probe[p] = v;
                        if let Some(q) = value(&probe, &mut chords) {
                            if q < r || (q == r && probe < idx) {
                                minimal = false;
                                break 'moves;
                            }
                        }
                    }
                }
                if minimal {
                    found.push((r, idx.clone()));
                }
            }
            let Some(p) = (1..idx.len()).rev().find(|&p| idx[p] < m - 1) else {
                break;
            };
            idx[p] += 1;
            let v = idx[p];
            for q in &mut idx[p + 1..] {
                *q = v;
            }
        }
        found
    };
    let mut all = exec.map_reduce(m, Vec::new, scan, |mut a, mut b| {
        a.append(&mut b);
        a
    });
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    all.truncate(k);
    all.into_iter()
        .map(|(r, idx)| {
            let mut t = Vec::with_capacity(n + 1);
            t.push(0.0);
            t.extend(idx.iter().map(|&i| grid_point(i, m)));
            t.push(1.0);
            (r, t)
        })
        .collect()
}

/// Runs the oracle on nested grids `m_{k+1} = 2·m_k − 1`; the residuals are
/// non-increasing because each grid contains the previous one.
pub fn nested_refine(
    ev: &ChordEvaluator,
    n: usize,
    w: &Weights,
    m_sequence: &[usize],
    opts: &OracleOptions,
) -> Result<Vec<OracleResult>> {
    if m_sequence.is_empty() {
        return Err(Error::domain("empty grid sequence"));
    }
    if let Some(p) = m_sequence.windows(2).find(|p| p[1] != 2 * p[0] - 1) {
        return Err(Error::domain(format!(
            "grid {} does not refine {} (expected {})",
            p[1],
            p[0],
            2 * p[0] - 1
        )));
    }
    m_sequence
        .iter()
        .map(|&m| brute_force_min_residual(ev, n, w, m, opts))
        .collect()
}
