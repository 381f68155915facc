//! Ordered fan-out over independent work items.

use rayon::prelude::*;

/// Worker count for sweeps; `None` runs on the calling thread.
///
/// Results are always merged in input order, so the thread count never
/// changes a report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Parallelism(pub Option<usize>);

impl Parallelism {
    pub fn sequential() -> Self {
        Parallelism(None)
    }

    pub fn threads(k: usize) -> Self {
        Parallelism(Some(k.max(1)))
    }

    pub(crate) fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self.0 {
            None => items.iter().map(f).collect(),
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool")
                .install(|| items.par_iter().map(f).collect()),
        }
    }
}
