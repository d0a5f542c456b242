//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature off every policy runs sequentially, so results
//! never depend on the choice; only wall-clock time does.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecPolicy {
    Sequential,
    #[default]
    Parallel,
}

impl ExecPolicy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecPolicy::Parallel
    }
}

/// Map `f` over `0..len` and fold the results in index order.
pub(crate) fn map_reduce<T, F, R>(policy: ExecPolicy, len: usize, identity: T, f: F, reduce: R) -> T
where
    T: Send + Clone,
    F: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        use rayon::prelude::*;
        let parts: Vec<T> = (0..len).into_par_iter().map(&f).collect();
        return parts.into_iter().fold(identity, reduce);
    }
    let _ = policy;
    (0..len).map(f).fold(identity, reduce)
}

/// `(0..len).map(f).collect()` under the given policy, order preserved.
pub(crate) fn map_collect<T, F>(policy: ExecPolicy, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = policy;
    (0..len).map(f).collect()
}
