//! Data-parallel sweeps over `S_n` and over lists of independent work items.
//!
//! With the `parallel` feature the permutation stream is cut into contiguous rank
//! ranges that are folded on the rayon pool and merged with an associative
//! combine. Without it every sweep runs on the calling thread. Results never
//! depend on how the stream was split.

use crate::combinat::{factorial, PermRange};

/// How a sweep is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

// Below this many permutations the split overhead dominates.
const MIN_CHUNK: u64 = 2048;

/// Folds every permutation of `S_n` (one-line notation, values `1..=n`) into an accumulator.
pub fn fold_perms<A, I, F, M>(n: usize, exec: Exec, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[u8]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let total = factorial(n);
    if !exec.is_parallel() || total <= MIN_CHUNK {
        let mut acc = init();
        PermRange::new(n, 0, total).for_each_slice(|w| fold(&mut acc, w));
        return acc;
    }
    parallel::fold_ranges(n, total, init, fold, merge)
}

/// Maps `f` over `items`, preserving order.
pub fn map_items<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if exec.is_parallel() {
        parallel::map_items(items, f)
    } else {
        items.iter().map(f).collect()
    }
}

/// Runs `f` on a pool of `jobs` worker threads (no-op wrapper when sequential).
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    parallel::with_jobs(jobs, f)
}

#[cfg(feature = "parallel")]
mod parallel {
    use rayon::prelude::*;

    use super::MIN_CHUNK;
    use crate::combinat::PermRange;

    pub(super) fn fold_ranges<A, I, F, M>(n: usize, total: u64, init: I, fold: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(&mut A, &[u8]) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let threads = rayon::current_num_threads() as u64;
        let chunk = (total / (threads * 8)).max(MIN_CHUNK);
        let chunks = total.div_ceil(chunk);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = init();
                PermRange::new(n, c * chunk, (c + 1) * chunk).for_each_slice(|w| fold(&mut acc, w));
                acc
            })
            .reduce_with(&merge)
            .unwrap_or_else(init)
    }

    pub(super) fn map_items<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        items.par_iter().map(f).collect()
    }

    pub(super) fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod parallel {
    pub(super) fn fold_ranges<A, I, F, M>(n: usize, total: u64, init: I, fold: F, _merge: M) -> A
    where
        I: Fn() -> A,
        F: Fn(&mut A, &[u8]),
    {
        let mut acc = init();
        crate::combinat::PermRange::new(n, 0, total).for_each_slice(|w| fold(&mut acc, w));
        acc
    }

    pub(super) fn map_items<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
        items.iter().map(f).collect()
    }

    pub(super) fn with_jobs<R>(_jobs: usize, f: impl FnOnce() -> R) -> R {
        f()
    }
}
