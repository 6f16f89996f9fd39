//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_range<R, F>(range: std::ops::Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}

/// Folds `f` over `range` and combines per-chunk accumulators with `merge`.
pub fn fold_range<A, F, M>(range: std::ops::Range<u64>, init: fn() -> A, f: F, merge: M) -> A
where
    A: Send,
    F: Fn(A, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().fold(init, &f).reduce(init, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &merge;
        range.fold(init(), f)
    }
}

/// Runs `f` sequentially regardless of the feature, for comparisons.
pub fn fold_range_seq<A, F>(range: std::ops::Range<u64>, init: fn() -> A, f: F) -> A
where
    F: Fn(A, u64) -> A,
{
    range.fold(init(), f)
}

/// Sets the global worker count; later calls are ignored.
pub fn set_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
    }
}

pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
