//! Geometry of the breakpoint simplex.
//!
//! An [`OrderedTuple`] `(t₁,…,t_{N−1})` with `0 ≤ t₁ ≤ … ≤ t_{N−1} ≤ 1` is a
//! point of the ordered simplex; the implicit ends are `t₀ = 0` and `t_N = 1`.
//! [`chord_vector`] maps it to the `N` chords between consecutive breakpoints
//! and [`radial_project`] sends a nonzero chord vector onto the standard
//! simplex, where it is compared with the target weights.
//!
//! Indices in [`FacePattern`] are 1-based (`i` marks the equality
//! `t_{i−1} = t_i`); [`Permutation`] and [`Barycentric`] are 0-based slices.

pub mod face_maps;

use std::collections::BTreeSet;
use std::fmt;

use crate::curve::ChordEvaluator;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Tolerance on `Σ αᵢ = 1` for barycentric coordinates and weights.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Default tolerance for deciding `t_{i−1} = t_i`.
pub const DEFAULT_FACE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OrderedTuple(Vec<f64>);

impl OrderedTuple {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if let Some(i) = t.iter().position(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::domain(format!(
                "t[{}] = {} outside [0, 1]",
                i + 1,
                t[i]
            )));
        }
        if let Some(i) = t.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::domain(format!(
                "tuple not nondecreasing at index {}",
                i + 2
            )));
        }
        Ok(OrderedTuple(t))
    }

    /// `(1/N, 2/N, …, (N−1)/N)`.
    pub fn uniform(n_chords: usize) -> Self {
        let n = n_chords as f64;
        OrderedTuple((1..n_chords).map(|i| i as f64 / n).collect())
    }

    /// Builds the tuple from the full breakpoint list `(0, t₁, …, t_{N−1}, 1)`.
    pub fn from_breakpoints(bps: &[f64]) -> Result<Self> {
        match bps {
            [first, inner @ .., last] if *first == 0.0 && *last == 1.0 => {
                OrderedTuple::new(inner.to_vec())
            }
            _ => Err(Error::domain("breakpoints must start at 0 and end at 1")),
        }
    }

    /// Cumulative sums of nonnegative gaps `(g₁,…,g_N)` summing to one. A zero
    /// gap yields an exact equality between neighbouring breakpoints, and
    /// breakpoints after the last nonzero gap are pinned to exactly 1.
    pub fn from_gaps(gaps: &[f64]) -> Result<Self> {
        if gaps.is_empty() || gaps.iter().any(|g| !(*g >= 0.0 && g.is_finite())) {
            return Err(Error::domain("gaps must be nonnegative and finite"));
        }
        let last_nonzero = gaps
            .iter()
            .rposition(|g| *g > 0.0)
            .ok_or(Error::ZeroChordVector)?;
        let mut acc = 0.0;
        let t = gaps[..gaps.len() - 1]
            .iter()
            .enumerate()
            .map(|(i, g)| {
                acc += g;
                if i >= last_nonzero {
                    1.0
                } else {
                    acc.min(1.0)
                }
            })
            .collect();
        OrderedTuple::new(t)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn n_chords(&self) -> usize {
        self.0.len() + 1
    }

    /// `(0, t₁, …, t_{N−1}, 1)`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = Vec::with_capacity(self.0.len() + 2);
        b.push(0.0);
        b.extend_from_slice(&self.0);
        b.push(1.0);
        b
    }
}

/// A point of the standard simplex `Σ ⊂ R^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Barycentric(Vec<f64>);

impl Barycentric {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::domain("empty barycentric vector"));
        }
        if alpha.iter().any(|a| !(*a >= 0.0 && a.is_finite())) {
            return Err(Error::domain("barycentric coordinates must be nonnegative"));
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::domain(format!(
                "barycentric coordinates sum to {sum}, not 1"
            )));
        }
        Ok(Barycentric(alpha))
    }

    /// The vertex `e_i` (0-based).
    pub fn vertex(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Barycentric(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based indices of the nonzero coordinates, i.e. the vertices of the
    /// minimal face containing the point.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0.0).collect()
    }

    pub fn on_boundary(&self) -> bool {
        self.0.contains(&0.0)
    }

    pub fn sup_distance(&self, other: &Barycentric) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A bijection of `{0,…,N−1}` stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::domain(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based images, e.g. `[2, 3, 1]` for the cycle `1→2→3→1`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::domain("1-based permutation contains 0"));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The cycle `i ↦ i + 1 (mod n)`.
    pub fn cyclic_shift(n: usize) -> Self {
        Permutation((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// True when the permutation is a single cycle through every index.
    pub fn is_cyclic(&self) -> bool {
        let n = self.0.len();
        if n == 0 {
            return false;
        }
        let mut i = self.0[0];
        let mut len = 1;
        while i != 0 {
            i = self.0[i];
            len += 1;
        }
        len == n
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The equalities `t_{i−1} = t_i` (1-based `i ∈ {1,…,N}`) that hold on a face of
/// the ordered simplex. Empty for the relative interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePattern {
    n_chords: usize,
    zeros: BTreeSet<usize>,
}

impl FacePattern {
    pub fn new(n_chords: usize, zeros: impl IntoIterator<Item = usize>) -> Result<Self> {
        let zeros: BTreeSet<usize> = zeros.into_iter().collect();
        if zeros.iter().any(|&i| i == 0 || i > n_chords) {
            return Err(Error::domain(format!(
                "face indices must lie in 1..={n_chords}"
            )));
        }
        if zeros.len() == n_chords {
            return Err(Error::domain("every equality at once would force 0 = 1"));
        }
        Ok(FacePattern { n_chords, zeros })
    }

    /// Every proper face: the nonempty patterns other than the full set.
    pub fn all_proper(n_chords: usize) -> Vec<FacePattern> {
        (1u64..(1u64 << n_chords) - 1)
            .map(|mask| FacePattern {
                n_chords,
                zeros: (1..=n_chords)
                    .filter(|i| mask & (1 << (i - 1)) != 0)
                    .collect(),
            })
            .collect()
    }

    pub fn n_chords(&self) -> usize {
        self.n_chords
    }

    pub fn zeros(&self) -> &BTreeSet<usize> {
        &self.zeros
    }

    pub fn is_interior(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.zeros.contains(&i)
    }
}

/// Chords `(D(t₀,t₁), …, D(t_{N−1},t_N))` over a full breakpoint list.
pub(crate) fn chords_between(ev: &ChordEvaluator, breakpoints: &[f64]) -> Vec<f64> {
    breakpoints
        .windows(2)
        .map(|w| ev.chord_unchecked(w[0], w[1]))
        .collect()
}

/// `(D(0,t₁), D(t₁,t₂), …, D(t_{N−1},1))`.
pub fn chord_vector(ev: &ChordEvaluator, t: &OrderedTuple) -> Vec<f64> {
    chords_between(ev, &t.breakpoints())
}

/// `x / Σx` for a nonnegative, nonzero `x`.
pub fn radial_project(x: &[f64]) -> Result<Barycentric> {
    if x.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(Error::domain(
            "radial projection needs nonnegative finite entries",
        ));
    }
    let sum: f64 = x.iter().sum();
    if sum <= 0.0 {
        return Err(Error::ZeroChordVector);
    }
    Ok(Barycentric(x.iter().map(|v| v / sum).collect()))
}

/// The affine map of `Σ` sending vertex `e_i` to `e_{τ(i)}`: coordinate `i` of
/// the input lands at position `τ(i)`.
pub fn phi_tau(x: &Barycentric, tau: &Permutation) -> Result<Barycentric> {
    if x.len() != tau.len() {
        return Err(Error::domain(format!(
            "permutation of {} elements applied to a point of dimension {}",
            tau.len(),
            x.len()
        )));
    }
    let mut out = vec![0.0; x.len()];
    for (i, &a) in x.coords().iter().enumerate() {
        out[tau.apply(i)] = a;
    }
    Ok(Barycentric(out))
}

/// `{ i : |t_i − t_{i−1}| ≤ eps }` with `t₀ = 0` and `t_N = 1`.
pub fn face_pattern(t: &OrderedTuple, eps: f64) -> FacePattern {
    let b = t.breakpoints();
    let zeros = b
        .windows(2)
        .enumerate()
        .filter(|(_, w)| (w[1] - w[0]).abs() <= eps)
        .map(|(i, _)| i + 1)
        .collect();
    FacePattern {
        n_chords: t.n_chords(),
        zeros,
    }
}

/// Barycentric grid of density `m` on the boundary of `Σ ⊂ R^n`: every
/// `k/m` with `k ∈ Nⁿ`, `Σk = m` and at least one `k_i = 0`.
pub fn boundary_grid(n: usize, m: usize) -> Vec<Barycentric> {
    fn compositions(n: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n - 1 {
            let used: usize = prefix.iter().sum();
            let mut c = prefix.clone();
            c.push(m - used);
            out.push(c);
            return;
        }
        let used: usize = prefix.iter().sum();
        for k in 0..=(m - used) {
            prefix.push(k);
            compositions(n, m, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    compositions(n, m, &mut Vec::with_capacity(n), &mut all);
    let scale = m as f64;
    all.into_iter()
        .filter(|k| k.contains(&0))
        .map(|k| Barycentric(k.into_iter().map(|k| k as f64 / scale).collect()))
        .collect()
}

/// Smallest sup-norm displacement `‖Ψ(x) − x‖∞` of `Ψ = φ_τ ∘ φ` over the
/// density-`m` boundary grid of `Σ ⊂ R^n`.
///
/// For a cyclic `τ` and a map `φ` that sends every proper face into itself,
/// `Ψ` has no fixed point on the boundary, so the result is strictly positive.
/// This is a finite-grid falsification probe, not a proof.
pub fn lemma_a_probe<F>(n: usize, tau: &Permutation, phi: F, m: usize, exec: Exec) -> Result<f64>
where
    F: Fn(&Barycentric) -> Barycentric + Sync,
{
    if n < 2 {
        return Err(Error::domain("the probe needs N ≥ 2"));
    }
    if tau.len() != n {
        return Err(Error::domain(format!(
            "τ acts on {} elements, N = {n}",
            tau.len()
        )));
    }
    if !tau.is_cyclic() {
        return Err(Error::domain(format!(
            "τ = {tau} is not a cyclic permutation"
        )));
    }
    if m == 0 {
        return Err(Error::domain("grid density must be positive"));
    }
    let grid = boundary_grid(n, m);
    let min = exec.map_reduce(
        grid.len(),
        || f64::INFINITY,
        |k| {
            let x = &grid[k];
            let y = phi(x);
            let psi = phi_tau(&y, tau).expect("φ preserves dimension");
            psi.sup_distance(x)
        },
        f64::min,
    );
    Ok(min)
}
