//! Weighted chord equipartition solvers.
//!
//! [`solve`] first scans for a chain of breakpoints whose chords all vanish
//! ([`detect_zero_chain`]). If one exists the problem is degenerate and the
//! chain itself is returned. Otherwise it tries, in order, marching bisection,
//! projection iteration and grid refinement, and returns the first result
//! whose residual is within tolerance.
//!
//! The residual is `‖G(F(t)) − α‖∞`, the sup-norm distance between the
//! normalised chord vector and the weights. It is scale-free: multiplying the
//! metric by a constant leaves it unchanged.

mod grid;
mod march;
mod projection;
mod zero_chain;

pub use grid::solve_grid_refine;
pub use march::{march, solve_marching_bisection, March, Overshoot};
pub use projection::solve_projection_iteration;
pub use zero_chain::detect_zero_chain;

use std::fmt;
use std::str::FromStr;

use crate::curve::ChordEvaluator;
use crate::error::{Error, Result};
use crate::oracle::OracleOptions;
use crate::simplex::{chords_between, OrderedTuple, DEFAULT_FACE_EPS, SUM_TOLERANCE};

/// Positive weights `α₁,…,α_N` with `Σαᵢ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::domain("at least one weight is required"));
        }
        if alpha.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::domain("weights must be positive and finite"));
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::domain(format!("weights sum to {sum}, not 1")));
        }
        Ok(Weights(alpha))
    }

    /// Normalises positive ratios such as `[1, 2, 3]`.
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() || raw.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::domain("weights must be positive and finite"));
        }
        let sum: f64 = raw.iter().sum();
        Weights::new(raw.iter().map(|a| a / sum).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Weights(vec![1.0 / n as f64; n])
    }

    pub fn alpha(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Weights {
        Weights(self.0.iter().rev().copied().collect())
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Breakpoints `0 = t₀ ≤ … ≤ t_N = 1` with their cached chords.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    t: Vec<f64>,
    chords: Vec<f64>,
}

impl Partition {
    pub fn from_breakpoints(ev: &ChordEvaluator, breakpoints: Vec<f64>) -> Result<Self> {
        OrderedTuple::from_breakpoints(&breakpoints)?;
        Ok(Partition::from_valid(ev, breakpoints))
    }

    pub(crate) fn from_valid(ev: &ChordEvaluator, t: Vec<f64>) -> Self {
        debug_assert!(t.len() >= 2 && t[0] == 0.0 && *t.last().unwrap() == 1.0);
        let chords = chords_between(ev, &t);
        Partition { t, chords }
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn chords(&self) -> &[f64] {
        &self.chords
    }

    pub fn n_chords(&self) -> usize {
        self.chords.len()
    }

    pub fn interior(&self) -> OrderedTuple {
        OrderedTuple::new(self.t[1..self.t.len() - 1].to_vec()).expect("partition invariant")
    }

    /// `t_{i−1} < t_i` for every `i`.
    pub fn is_strict(&self) -> bool {
        self.t.windows(2).all(|w| w[0] < w[1])
    }

    /// Recomputes the chords and compares them bit for bit.
    pub fn is_consistent(&self, ev: &ChordEvaluator) -> bool {
        chords_between(ev, &self.t) == self.chords
    }

    /// `t_i ↦ 1 − t_{N−i}`, mapping a partition of the reversed curve back.
    pub fn reversed_breakpoints(&self) -> Vec<f64> {
        let n = self.t.len() - 1;
        (0..=n)
            .map(|i| match i {
                0 => 0.0,
                i if i == n => 1.0,
                i => 1.0 - self.t[n - i],
            })
            .collect()
    }
}

/// Residual value, or the flag for an all-zero chord vector (the origin is
/// not in the domain of the radial projection).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    Value(f64),
    Degenerate,
}

impl Residual {
    pub fn value(self) -> Option<f64> {
        match self {
            Residual::Value(v) => Some(v),
            Residual::Degenerate => None,
        }
    }
}

/// `‖c/Σc − α‖∞`, `None` when `Σc = 0`.
pub(crate) fn normalized_residual(chords: &[f64], alpha: &[f64]) -> Option<f64> {
    let sum: f64 = chords.iter().sum();
    if !(sum > 0.0) {
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

pub fn residual(ev: &ChordEvaluator, t: &OrderedTuple, w: &Weights) -> Result<Residual> {
    if t.n_chords() != w.len() {
        return Err(Error::domain(format!(
            "tuple has {} chords, weights have {} entries",
            t.n_chords(),
            w.len()
        )));
    }
    let chords = chords_between(ev, &t.breakpoints());
    Ok(match normalized_residual(&chords, w.alpha()) {
        Some(r) => Residual::Value(r),
        None => Residual::Degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    MarchingBisection,
    ProjectionIteration,
    GridRefine,
}

impl SolveMethod {
    pub const ALL: [SolveMethod; 3] = [
        SolveMethod::MarchingBisection,
        SolveMethod::ProjectionIteration,
        SolveMethod::GridRefine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::MarchingBisection => "marching_bisection",
            SolveMethod::ProjectionIteration => "projection_iteration",
            SolveMethod::GridRefine => "grid_refine",
        }
    }
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "march" | "marching_bisection" => Ok(SolveMethod::MarchingBisection),
            "project" | "projection_iteration" => Ok(SolveMethod::ProjectionIteration),
            "grid" | "grid_refine" => Ok(SolveMethod::GridRefine),
            other => Err(Error::parse(
                other,
                "unknown method (expected march, project or grid)",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    DegenerateZeroChain,
    MaxIterations,
    BracketingFailed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "Converged",
            Status::DegenerateZeroChain => "DegenerateZeroChain",
            Status::MaxIterations => "MaxIterations",
            Status::BracketingFailed => "BracketingFailed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Converged" => Ok(Status::Converged),
            "DegenerateZeroChain" => Ok(Status::DegenerateZeroChain),
            "MaxIterations" => Ok(Status::MaxIterations),
            "BracketingFailed" => Ok(Status::BracketingFailed),
            other => Err(Error::parse(other, "unknown status")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// `None` for the trivial `N = 1` case and for degenerate problems.
    pub method: Option<SolveMethod>,
    pub iterations: usize,
    /// Normalised residual of the returned partition. For a degenerate
    /// problem, the largest chord of the zero chain.
    pub residual: f64,
    pub status: Status,
    pub zero_chain_witness: Option<Vec<f64>>,
    /// Whether the breakpoints are strictly increasing (checked, not enforced).
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub partition: Partition,
    pub report: SolveReport,
}

impl Solution {
    pub(crate) fn new(
        partition: Partition,
        method: Option<SolveMethod>,
        iterations: usize,
        residual: f64,
        status: Status,
    ) -> Self {
        let strict = partition.is_strict();
        Solution {
            partition,
            report: SolveReport {
                method,
                iterations,
                residual,
                status,
                zero_chain_witness: None,
                strict,
            },
        }
    }

    pub fn converged(&self) -> bool {
        self.report.status == Status::Converged
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Bound on the normalised sup-norm residual.
    pub tol: f64,
    /// `None` runs the full portfolio.
    pub method: Option<SolveMethod>,
    /// Samples per breakpoint when marching looks for the first crossing.
    pub step_m: usize,
    /// Doubling/halving sweeps allowed while bracketing the chord scale.
    pub max_sweeps: usize,
    pub max_bisections: usize,
    /// Starting chord scale for the bracket sweep; defaults to `D(0,1)`.
    pub initial_scale: Option<f64>,
    pub max_iter: usize,
    pub damping: f64,
    /// Starting tuple for projection iteration; defaults to uniform.
    pub start: Option<OrderedTuple>,
    pub zero_chain_grid: usize,
    pub zero_chain_eps: f64,
    /// Oracle grid for the grid-refine fallback.
    pub polish_grid: usize,
    pub oracle: OracleOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-8,
            method: None,
            step_m: 1024,
            max_sweeps: 60,
            max_bisections: 200,
            initial_scale: None,
            max_iter: 10_000,
            damping: 0.5,
            start: None,
            zero_chain_grid: 101,
            zero_chain_eps: DEFAULT_FACE_EPS,
            polish_grid: 201,
            oracle: OracleOptions::default(),
        }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::domain("tolerance must be positive"));
        }
        if self.step_m < 2 {
            return Err(Error::domain("step_m must be at least 2"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::domain("damping must lie in (0, 1]"));
        }
        if self.zero_chain_grid < 2 || self.polish_grid < 2 {
            return Err(Error::domain("grids need at least 2 points"));
        }
        if !(self.zero_chain_eps >= 0.0) {
            return Err(Error::domain("zero-chain eps must be nonnegative"));
        }
        if let Some(c) = self.initial_scale {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::domain("initial scale must be positive"));
            }
        }
        Ok(())
    }
}

/// Tracks the lowest-residual partition seen by a method.
pub(crate) struct Best {
    pub partition: Option<Partition>,
    pub residual: f64,
}

impl Best {
    pub fn new() -> Self {
        Best {
            partition: None,
            residual: f64::INFINITY,
        }
    }

    pub fn offer(&mut self, partition: &Partition, residual: Option<f64>) {
        let r = residual.unwrap_or(f64::INFINITY);
        if self.partition.is_none() || r < self.residual {
            self.partition = Some(partition.clone());
            self.residual = r;
        }
    }

    pub fn into_solution(
        self,
        ev: &ChordEvaluator,
        method: SolveMethod,
        iterations: usize,
        status: Status,
    ) -> Solution {
        let n = self.partition.as_ref().map_or(1, Partition::n_chords);
        let partition = self
            .partition
            .unwrap_or_else(|| Partition::from_valid(ev, OrderedTuple::uniform(n).breakpoints()));
        Solution::new(partition, Some(method), iterations, self.residual, status)
    }
}

fn check_problem(n: usize, w: &Weights) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    if w.len() != n {
        return Err(Error::domain(format!(
            "{} weights given for N = {n}",
            w.len()
        )));
    }
    Ok(())
}

/// Dispatcher over the method portfolio; see the module docs.
pub fn solve(ev: &ChordEvaluator, n: usize, w: &Weights, opts: &SolveOptions) -> Result<Solution> {
    check_problem(n, w)?;
    opts.validate()?;
    if n == 1 {
        let p = Partition::from_valid(ev, vec![0.0, 1.0]);
        return Ok(Solution::new(p, None, 0, 0.0, Status::Converged));
    }
    if let Some(witness) = detect_zero_chain(ev, n, opts.zero_chain_eps, opts.zero_chain_grid)? {
        let p = Partition::from_valid(ev, witness.clone());
        let largest = p.chords().iter().copied().fold(0.0, f64::max);
        let mut s = Solution::new(p, None, 0, largest, Status::DegenerateZeroChain);
        s.report.zero_chain_witness = Some(witness);
        return Ok(s);
    }
    let methods: Vec<SolveMethod> = match opts.method {
        Some(m) => vec![m],
        None => SolveMethod::ALL.to_vec(),
    };
    let mut fallback: Option<Solution> = None;
    for method in methods {
        let s = run_method(ev, w, opts, method)?;
        if s.converged() {
            return Ok(s);
        }
        if fallback
            .as_ref()
            .is_none_or(|f| s.report.residual < f.report.residual)
        {
            fallback = Some(s);
        }
    }
    let mut s = fallback.expect("at least one method ran");
    if opts.method.is_none() {
        s.report.status = Status::MaxIterations;
    }
    Ok(s)
}

fn run_method(
    ev: &ChordEvaluator,
    w: &Weights,
    opts: &SolveOptions,
    method: SolveMethod,
) -> Result<Solution> {
    match method {
        SolveMethod::MarchingBisection => solve_marching_bisection(ev, w, opts),
        SolveMethod::ProjectionIteration => solve_projection_iteration(ev, w, opts),
        SolveMethod::GridRefine => solve_grid_refine(ev, w, opts),
    }
}
