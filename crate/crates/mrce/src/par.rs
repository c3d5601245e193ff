//! Thin dispatch between rayon and sequential iteration.
//!
//! Every caller passes an explicit `parallel` flag so the `_seq` solver
//! variants stay sequential even when the `parallel` feature is enabled.
//! Without the feature the flag is ignored and everything runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn run_map<T, R, F>(parallel: bool, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}
