//! Data-parallel helpers backed by rayon, with sequential fallbacks when the
//! `parallel` feature is disabled. All helpers preserve input order (or use a
//! strict total order for reductions), so results are identical either way.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn sort_unstable_by<T, F>(items: &mut [T], cmp: F)
where
    T: Send,
    F: Fn(&T, &T) -> Ordering + Sync,
{
    use rayon::prelude::*;
    items.par_sort_unstable_by(cmp);
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn sort_unstable_by<T, F>(items: &mut [T], cmp: F)
where
    T: Send,
    F: Fn(&T, &T) -> Ordering + Sync,
{
    items.sort_unstable_by(|a, b| cmp(a, b));
}

/// Maximum of `eval` over `0..n` under `cmp`. The comparator must be a strict
/// total order so the parallel reduction is deterministic.
#[cfg(feature = "parallel")]
pub(crate) fn max_in_range<T, F, C>(n: u64, eval: F, cmp: C) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
    C: Fn(&T, &T) -> Ordering + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().filter_map(eval).max_by(cmp)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn max_in_range<T, F, C>(n: u64, eval: F, cmp: C) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
    C: Fn(&T, &T) -> Ordering + Sync + Send,
{
    (0..n).filter_map(eval).max_by(cmp)
}
