//! Order-preserving parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) work is spread over a rayon pool
//! in contiguous chunks; results always come back in input order, so the
//! output never depends on the worker count.

/// Worker count: `0` means one per core, `1` forces sequential execution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Jobs(pub usize);

impl Jobs {
    pub const SEQUENTIAL: Jobs = Jobs(1);
    pub const ALL: Jobs = Jobs(0);
}

/// Maps `f` over `items`, preserving order.
pub fn map_ordered<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if jobs.0 != 1 && items.len() > 1 {
            return parallel::map(items, jobs.0, f);
        }
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
mod parallel {
    use rayon::prelude::*;

    pub(super) fn map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        let run = || {
            let workers = rayon::current_num_threads().max(1);
            let chunk = items.len().div_ceil(workers * 4).max(1);
            items
                .par_chunks(chunk)
                .map(|c| c.iter().map(&f).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        };
        if threads == 0 {
            return run();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => items.iter().map(&f).collect(),
        }
    }
}
