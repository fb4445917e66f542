//! Deterministic parallel map-reduce over contiguous index ranges.

use std::ops::Range;

use rayon::prelude::*;

/// Positions per work unit; fixed so partitioning never depends on the
/// worker count.
pub const CHUNK: usize = 1024;

/// Maps every chunk of `0..total` and folds the partial results in chunk
/// order. With an associative `merge` the result is independent of
/// `threads`.
pub fn map_reduce<A, F, M>(total: usize, threads: usize, map: F, merge: M) -> A
where
    A: Send + Default,
    F: Fn(Range<usize>) -> A + Sync + Send,
    M: Fn(A, A) -> A,
{
    let chunks: Vec<Range<usize>> = (0..total).step_by(CHUNK).map(|s| s..(s + CHUNK).min(total)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    let parts: Vec<A> = pool.install(|| chunks.into_par_iter().map(&map).collect());
    parts.into_iter().fold(A::default(), merge)
}

/// Worker count used when none is configured.
pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
