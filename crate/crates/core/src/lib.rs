//! Weighted chord-length equipartition of curves.
//!
//! Given a curve `Γ : [0,1] → Rⁿ`, a semi-metric `d` and positive weights
//! `α₁,…,α_N` summing to one, the solvers in this crate look for breakpoints
//! `0 = t₀ ≤ t₁ ≤ … ≤ t_N = 1` whose chords `D(t_{i-1}, t_i) = d(Γ(t_{i-1}), Γ(t_i))`
//! are proportional to the weights. When the curve admits a chain of
//! breakpoints whose chords all vanish, the problem is reported as degenerate
//! instead.
//!
//! Module map:
//!
//! * [`curve`]: curve representations, semi-metrics and the chord function.
//! * [`simplex`]: the ordered simplex of breakpoints, the chord-vector map,
//!   radial projection onto the standard simplex and the permutation-map probe.
//! * [`solver`]: residuals, zero-chain detection and the method portfolio.
//! * [`oracle`]: exhaustive grid minimisation used as ground truth.
//! * [`fixtures`]: seeded curve generators shared by tests, benches and the CLI.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
mod error;
mod exec;
pub mod fixtures;
pub mod oracle;
pub mod simplex;
pub mod solver;

pub use curve::{ChordEvaluator, Curve, Point, SemiMetric};
pub use error::{Error, Result};
pub use exec::Exec;
pub use oracle::{brute_force_min_residual, nested_refine, OracleOptions, OracleResult};
pub use simplex::{Barycentric, FacePattern, OrderedTuple, Permutation};
pub use solver::{
    detect_zero_chain, residual, solve, Partition, Residual, Solution, SolveMethod, SolveOptions,
    SolveReport, Status, Weights,
};
