//! Execution policy for the data-parallel loops (slice frontiers in the
//! t count, exhaustive sweeps).
//!
//! With the `parallel` feature the [`Exec::Parallel`] policy runs on the rayon
//! global pool; without it both policies run sequentially. Results are
//! identical under either policy: every reduction is an exact integer sum or
//! an order-preserving collect.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether this policy actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over an index range.
    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Map each item and fold the results with an associative `combine`.
    pub fn map_reduce<T, R, F, C>(self, items: &[T], identity: R, f: F, combine: C) -> R
    where
        T: Sync,
        R: Send + Sync + Clone,
        F: Fn(&T) -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items
                .par_iter()
                .map(&f)
                .reduce(|| identity.clone(), &combine);
        }
        items.iter().map(f).fold(identity, combine)
    }

    /// True iff `pred` holds for every item. Short-circuits.
    pub fn all<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().all(pred);
        }
        items.iter().all(pred)
    }
}
