//! Trial-parallel execution with order-independent results.
//!
//! Workers pull trial indices from a shared counter, each trial derives its
//! own random stream from (master_seed, tag, index), and results are sorted
//! back into index order before aggregation — so the outcome is a pure
//! function of the config, whatever the worker count.

use std::sync::atomic::{AtomicU64, Ordering};

/// Runs `f(0), f(1), ..., f(count−1)` on `workers` threads and returns the
/// results in index order.
pub fn run_indexed<T, F>(workers: usize, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    assert!(workers >= 1, "need at least one worker");
    if workers == 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicU64::new(0);
    let mut tagged: Vec<(u64, T)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    tagged.sort_unstable_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, t)| t).collect()
}
