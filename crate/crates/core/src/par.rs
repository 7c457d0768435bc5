//! Data-parallel kernels with a sequential fallback.
//!
//! With the default `parallel` feature the exhaustive scans (unit orbits,
//! coefficient sweeps, subgroup joins) shard across rayon workers; without
//! it everything runs on one thread. Merges preserve the input order, so
//! results are identical in both modes and independent of the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        ExecMode::Parallel
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        ExecMode::Sequential
    }
}

pub(crate) fn range_filter_map<U, F>(n: u64, mode: ExecMode, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> Option<U> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).filter_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().filter_map(f).collect(),
    }
}

pub(crate) fn slice_filter_map<T, U, F>(items: &[T], mode: ExecMode, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().filter_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().filter_map(f).collect(),
    }
}

pub(crate) fn slice_all<T, F>(items: &[T], mode: ExecMode, pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().all(pred),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().all(pred),
    }
}
