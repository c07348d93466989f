//! Execution strategy for the data-parallel loops (row classification,
//! batch classification during density counting, bulk property checks).
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the rayon global pool. Without it, every strategy runs sequentially.
//! Both paths merge partial results in input order, so results are
//! identical whichever strategy runs.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when this strategy actually fans out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `items`, keeping order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `0..n`, keeping order.
    pub fn map_range<R, F>(self, n: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Folds `0..n` in chunks and merges the chunk results with an
    /// associative `merge`.
    pub fn fold_range<A, I, F, M>(self, n: u64, identity: I, fold: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, u64) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n)
                .into_par_iter()
                .fold(&identity, &fold)
                .reduce(&identity, &merge);
        }
        let _ = &merge;
        (0..n).fold(identity(), fold)
    }

    /// Count of indices in `0..n` satisfying `pred`.
    pub fn count_range<F>(self, n: u64, pred: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        self.fold_range(n, || 0u64, |acc, i| acc + pred(i) as u64, |a, b| a + b)
    }
}
