/// How data-parallel loops are scheduled.
///
/// Without the `parallel` feature, [`Execution::Parallel`] runs sequentially.
/// Results never depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Whether work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `0..parts` through `map` and folds the partial results with `reduce`.
    /// `reduce` must be associative with `identity` as its unit.
    pub(crate) fn map_reduce<T, M, I, R>(self, parts: usize, map: M, identity: I, reduce: R) -> T
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
        I: Fn() -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..parts).into_par_iter().map(map).reduce(identity, reduce);
        }
        (0..parts).map(map).fold(identity(), reduce)
    }

    /// Order-preserving map over a slice.
    pub(crate) fn map_slice<A, T, M>(self, items: &[A], map: M) -> Vec<T>
    where
        A: Sync,
        T: Send,
        M: Fn(&A) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(map).collect();
        }
        items.iter().map(map).collect()
    }
}
