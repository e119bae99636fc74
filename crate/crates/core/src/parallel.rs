//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature the items are spread over the rayon pool;
//! without it, or through [`seq_map`], they run one after another. Either way
//! the output is in input order, so reports built from it are deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether [`par_map`] uses the thread pool in this build.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Map `f` over `items`, in parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    seq_map(items, f)
}

/// Sequential reference path.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Like [`par_map`] but stops at the first error in input order.
pub fn try_par_map<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}
