//! Deterministic fork-join helper for the enumeration routines.
//!
//! Work is split into contiguous chunks, each chunk is processed on its own
//! scoped thread, and results are concatenated in chunk order, so the output
//! is identical to the sequential run regardless of scheduling. The worker
//! count is capped by the `TROPLAB_THREADS` environment variable (default:
//! available parallelism).

use std::num::NonZeroUsize;

pub const THREADS_ENV: &str = "TROPLAB_THREADS";

/// Number of workers to use: `TROPLAB_THREADS` if set and positive, otherwise
/// the machine's available parallelism, and always at least 1.
pub fn worker_count() -> usize {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

/// Map `f` over `0..n` in parallel chunks and concatenate the per-index
/// results in index order. `f` must be pure; determinism of the merged output
/// follows from the fixed chunk layout.
pub fn parallel_flat_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync,
{
    let workers = worker_count().min(n.max(1));
    if workers <= 1 || n < 2 {
        return (0..n).flat_map(&f).collect();
    }
    let chunk = n.div_ceil(workers);
    let mut buckets: Vec<Vec<T>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(n);
                scope.spawn(move || (lo..hi).flat_map(f).collect::<Vec<T>>())
            })
            .collect();
        for h in handles {
            buckets.push(h.join().expect("enumeration worker panicked"));
        }
    });
    buckets.into_iter().flatten().collect()
}
