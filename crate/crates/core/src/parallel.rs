//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature the work runs on a rayon pool sized by `jobs`
//! (0 means one thread per core). Without it, or with `jobs == 1`, items are
//! processed in order on the calling thread. Output order always matches
//! input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub struct Workers {
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Workers {
    pub fn new(jobs: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            let pool = (jobs != 1).then(|| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .expect("thread pool")
            });
            Workers { pool }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = jobs;
            Workers {}
        }
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| items.par_iter().map(&f).collect());
        }
        map_items_sequential(items, f)
    }
}

pub fn map_items<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    Workers::new(jobs).map(items, f)
}

pub fn map_items_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Every normalized `L(p, q)` with `lo <= p <= hi` and `1 <= q < p`, sorted.
pub fn lens_pairs(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    use num_integer::Integer;
    (lo.max(2)..=hi)
        .flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| (p, q)))
        .collect()
}
