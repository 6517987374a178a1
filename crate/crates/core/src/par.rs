//! Order-preserving parallel map, sequential without the `parallel` feature.

/// Applies `f` to every item; output order always matches input order.
/// `workers = None` uses the global pool.
pub fn map_ordered<T, R, F>(items: &[T], workers: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let run = || items.par_iter().map(&f).collect();
        match workers {
            Some(1) => items.iter().map(&f).collect(),
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .expect("thread pool")
                .install(run),
            None => run(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        items.iter().map(f).collect()
    }
}
