//! Execution strategy for the data-parallel scans (oracle enumeration, chord
//! tables, the permutation-map probe).
//!
//! With the `parallel` feature (on by default) scans run on the rayon global
//! pool. Every reduction used with [`Exec`] is order-independent, so both
//! strategies return identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    /// Every strategy compiled into this build.
    pub fn available() -> Vec<Exec> {
        vec![
            Exec::Sequential,
            #[cfg(feature = "parallel")]
            Exec::Parallel,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Exec::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Exec::Parallel => "parallel",
        }
    }

    /// Maps `0..n` and folds the results with `reduce`. `reduce` must be
    /// associative and commutative for the result to be schedule-independent.
    pub(crate) fn map_reduce<T, I, M, R>(self, n: usize, identity: I, map: M, reduce: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        M: Fn(usize) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(map).fold(identity(), reduce),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(map).reduce(identity, reduce),
        }
    }

    pub(crate) fn map_collect<T, M>(self, n: usize, map: M) -> Vec<T>
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(map).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(map).collect(),
        }
    }
}
