//! Ordered data-parallel map with a sequential fallback.
//!
//! `workers == 1` always runs on the calling thread. Any other value uses
//! rayon when the `parallel` feature is enabled: `0` means the global pool,
//! `n > 1` a dedicated pool of `n` threads. Results are collected in index
//! order, so the output never depends on scheduling.

/// Whether the crate was built with the rayon backend.
pub const PARALLEL_ENABLED: bool = cfg!(feature = "parallel");

/// `(0..n).map(f).collect()` on the calling thread.
pub fn map_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// `(0..n).map(f).collect()`, spread over `workers` threads.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match workers {
        1 => map_sequential(n, f),
        0 => (0..n).into_par_iter().map(f).collect(),
        w => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            Err(_) => (0..n).into_par_iter().map(f).collect(),
        },
    }
}

/// `(0..n).map(f).collect()`; built without the `parallel` feature this is
/// always sequential.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, _workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_sequential(n, f)
}
