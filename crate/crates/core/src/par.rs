//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over a rayon pool; without it the same reductions run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `reduce` over `map(i)` for `i in 0..len`. `reduce` must be associative
/// with `identity()` as its unit; the result then does not depend on how
/// the range is split.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, I, M, R>(len: u64, identity: I, map: M, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    (0..len).into_par_iter().map(map).reduce(identity, reduce)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, I, M, R>(len: u64, identity: I, map: M, reduce: R) -> T
where
    I: Fn() -> T,
    M: Fn(u64) -> T,
    R: Fn(T, T) -> T,
{
    (0..len).map(map).fold(identity(), reduce)
}

/// Runs `f` on a pool of `jobs` threads (`None`: the global pool).
/// `Some(1)` forces a single worker.
#[cfg(feature = "parallel")]
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<R>(_jobs: Option<usize>, f: impl FnOnce() -> R) -> R {
    f()
}

/// Whether this build spreads work across threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
