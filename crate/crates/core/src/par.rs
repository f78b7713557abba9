//! Row-level data parallelism.
//!
//! With the `parallel` feature, independent rows are mapped on the current
//! rayon pool; otherwise they run in order on the calling thread. Results are
//! always collected in row order, and no accumulation crosses rows, so the
//! output is identical either way.

/// Maps `f` over `0..n` and collects the results in index order.
pub fn map_rows<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// True when the crate was built with rayon support.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Runs `op` with row parallelism limited to `threads` workers.
///
/// `threads == 1` forces strictly sequential evaluation on the calling
/// thread's pool. Without the `parallel` feature this simply calls `op`.
pub fn with_threads<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        let threads = threads.max(1);
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        op()
    }
}
