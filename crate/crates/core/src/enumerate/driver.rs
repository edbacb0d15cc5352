//! Chunk scheduler for the enumeration scans.
//!
//! Work is split into indexed chunks (one outer-coordinate value each).
//! Workers compute chunk results in waves of scoped threads; the caller
//! consumes results strictly in chunk order, so every downstream artifact
//! is independent of the worker count. A worker count of zero or one runs
//! inline with no threads at all.

/// Maps `requested = 0` to the machine's available parallelism.
pub(crate) fn resolve_workers(requested: usize) -> usize {
    if requested == 0 {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    } else {
        requested
    }
}

/// Computes `map(i)` for every chunk index and hands the results to
/// `consume` in ascending index order. Memory stays bounded by one result
/// per in-flight worker.
pub(crate) fn run_chunked<T, M, C>(n_chunks: usize, workers: usize, map: M, mut consume: C)
where
    T: Send,
    M: Fn(usize) -> T + Sync,
    C: FnMut(usize, T),
{
    let workers = resolve_workers(workers).min(n_chunks.max(1));
    if workers <= 1 {
        for i in 0..n_chunks {
            consume(i, map(i));
        }
        return;
    }
    let map = &map;
    let mut next = 0usize;
    while next < n_chunks {
        let wave_end = (next + workers).min(n_chunks);
        let results: Vec<T> = std::thread::scope(|scope| {
            let handles: Vec<_> = (next..wave_end)
                .map(|i| scope.spawn(move || map(i)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        for (offset, value) in results.into_iter().enumerate() {
            consume(next + offset, value);
        }
        next = wave_end;
    }
}
